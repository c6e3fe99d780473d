//! `divides`: plane-curve invariants and the Casson invariant of divide
//! knots, two independent ways.

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use divide_core::arnold;
use divide_core::corpus::GenParams;
use divide_core::curve::CurveKind;
use divide_core::diagram::Diagram;
use divide_core::divide::Divide;
use divide_core::formats;
use divide_core::hirasawa;
use divide_core::perestroika::{self, MoveKind};
use divide_core::svg;
use divide_core::verify;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "divides",
    about = "Casson invariants of divide knots and Arnold invariants of plane curves",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Pd,
    Gauss,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveKindArg {
    Direct,
    Inverse,
    Triple,
}

#[derive(Subcommand)]
enum Command {
    /// Check genericity of a divide or closed curve file
    Validate { file: PathBuf },
    /// Arnold invariants: St, J+, J-, J~ and the turning number
    Invariants { file: PathBuf },
    /// Casson invariant via the Arnold-invariant formula, with all terms
    Casson { file: PathBuf },
    /// Knot diagram of a divide: PD code, Gauss code, or SVG
    Diagram {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "pd")]
        format: DiagramFormat,
        /// write to a file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Casson invariant via the Alexander polynomial of the knot diagram
    Oracle {
        file: PathBuf,
        /// redundantly recompute v2 by the degree-2 Gauss-diagram count and
        /// require agreement
        #[arg(long)]
        gauss_check: bool,
    },
    /// Cross-validate both pipelines on files and/or random divides
    Verify {
        files: Vec<PathBuf>,
        /// also check this many seed-generated divides
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        /// generator seed; defaults to $DIVIDES_SEED or 1
        #[arg(long)]
        seed: Option<u64>,
        /// negative control: corrupt each diagram before the oracle runs
        #[arg(long, hide = true)]
        inject_corruption: bool,
    },
    /// Apply a perestroika to a divide and compare predicted/measured deltas
    Perestroika {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: MoveKindArg,
        /// which discovered site to use
        #[arg(long, default_value_t = 0)]
        site_index: usize,
        /// write the before/after divides next to this prefix
        #[arg(long)]
        out_prefix: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn default_seed() -> u64 {
    std::env::var("DIVIDES_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1)
}

fn read_curve(path: &PathBuf) -> anyhow::Result<formats::ParsedCurve> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(formats::parse_curve_text(&text)?)
}

fn read_divide(path: &PathBuf) -> anyhow::Result<Divide> {
    let parsed = read_curve(path)?;
    if parsed.curve.kind != CurveKind::Open {
        bail!("{} does not contain a divide", path.display());
    }
    Ok(Divide::new(parsed.curve)?)
}

fn run() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { file } => {
            let parsed = read_curve(&file)?;
            let report = parsed.curve.validate();
            if report.valid {
                println!(
                    "valid {} with {} double point(s)",
                    match parsed.curve.kind {
                        CurveKind::Open => "divide",
                        CurveKind::Closed => "closed curve",
                    },
                    report.double_points.len()
                );
                Ok(true)
            } else {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                Err(anyhow!("curve is not generic"))
            }
        }
        Command::Invariants { file } => {
            let parsed = read_curve(&file)?;
            match parsed.curve.kind {
                CurveKind::Closed => {
                    let c = &parsed.curve;
                    println!("turning number: {}", c.turning_number()?);
                    println!("St  = {}", arnold::strangeness(c)?);
                    println!("J+  = {}", arnold::j_plus(c)?);
                    println!("J-  = {}", arnold::j_minus(c)?);
                    println!("J~  = {}", arnold::j_tilde(c)?);
                }
                CurveKind::Open => {
                    let d = Divide::new(parsed.curve)?;
                    for (label, dv) in [("forward", d.clone()), ("reversed", d.reverse())] {
                        let c = dv.closure()?;
                        let st = arnold::strangeness(&c)?;
                        let jp = arnold::j_plus(&c)?;
                        let jm = arnold::j_minus(&c)?;
                        println!(
                            "closure ({label}): St = {st}, J+ = {jp}, J- = {jm}, (J+ + 2 St)/4 = {}/4",
                            jp + 2 * st
                        );
                    }
                }
            }
            Ok(true)
        }
        Command::Casson { file } => {
            let d = read_divide(&file)?;
            let report = d.casson_report()?;
            for (id, jt, cr) in &report.vertex_terms {
                println!("vertex {id}: J~(O_v) = {jt}, #(O_v ∩ I_v) = {cr}");
            }
            println!(
                "closure: J+ = {}, St = {}",
                report.closure_j_plus, report.closure_strangeness
            );
            println!("casson = {}", report.total);
            Ok(true)
        }
        Command::Diagram { file, format, output } => {
            let d = read_divide(&file)?;
            let h = hirasawa::build_diagram(&d)?;
            let text = match format {
                DiagramFormat::Pd => {
                    let mut t = h.pd_text();
                    t.push('\n');
                    t
                }
                DiagramFormat::Gauss => {
                    let mut t = h.gauss_text();
                    t.push('\n');
                    t
                }
                DiagramFormat::Svg => svg::render_diagram(&h),
            };
            match output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Oracle { file, gauss_check } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let diagram = if text.trim_start().starts_with("X[") {
                Diagram::from_pd_text(&text)?
            } else {
                let parsed = formats::parse_curve_text(&text)?;
                if parsed.curve.kind != CurveKind::Open {
                    bail!("oracle needs a divide or a PD code");
                }
                hirasawa::build_diagram(&Divide::new(parsed.curve)?)?.reduced
            };
            let poly = divide_core::alexander::alexander(&diagram)?;
            let v2 = divide_core::alexander::casson_from_alexander(&poly)?;
            println!("alexander: {poly}");
            println!("v2 = {v2}");
            if gauss_check {
                let gauss = divide_core::alexander::casson_gauss_count(&diagram)?;
                println!("gauss-diagram count: {gauss}");
                if gauss != v2 {
                    bail!("gauss-diagram count {gauss} disagrees with Alexander value {v2}");
                }
            }
            Ok(true)
        }
        Command::Verify { files, random, max_crossings, seed, inject_corruption } => {
            let mut batch: Vec<(String, Divide)> = Vec::new();
            for f in &files {
                batch.push((f.display().to_string(), read_divide(f)?));
            }
            if random > 0 {
                let params = GenParams { max_crossings, ..GenParams::default() };
                let seed = seed.unwrap_or_else(default_seed);
                batch.extend(verify::random_batch(seed, random, &params));
            }
            if batch.is_empty() {
                bail!("nothing to verify: pass files or --random N");
            }
            let results = verify::verify_batch(&batch, inject_corruption);
            let (report, all_ok) = verify::summarize(&results);
            print!("{report}");
            Ok(all_ok)
        }
        Command::Perestroika { file, kind, site_index, out_prefix } => {
            let d = read_divide(&file)?;
            let receipt = match kind {
                MoveKindArg::Direct | MoveKindArg::Inverse => {
                    let want = if matches!(kind, MoveKindArg::Direct) {
                        MoveKind::DirectTangency
                    } else {
                        MoveKind::InverseTangency
                    };
                    let sites = perestroika::find_tangency_sites(d.curve(), Some(want));
                    let site = sites
                        .get(site_index)
                        .ok_or_else(|| anyhow!("only {} site(s) found", sites.len()))?;
                    perestroika::apply_tangency(d.curve(), site)?
                }
                MoveKindArg::Triple => {
                    let sites = perestroika::find_triple_sites(d.curve())?;
                    let site = sites
                        .get(site_index)
                        .ok_or_else(|| anyhow!("only {} triangle(s) found", sites.len()))?;
                    perestroika::apply_triple(d.curve(), site)?
                }
            };
            let before = Divide::new(receipt.before.clone())?;
            let after = Divide::new(receipt.after.clone())?;
            let f_before = before.casson_formula()?;
            let f_after = after.casson_formula()?;
            let o_before = hirasawa::casson_oracle(&before)?;
            let o_after = hirasawa::casson_oracle(&after)?;
            println!("measured delta (formula): {}", f_after - f_before);
            println!("measured delta (oracle):  {}", o_after - o_before);
            match kind {
                MoveKindArg::Inverse => {
                    let rep = perestroika::chmutov_delta_inverse(&before, &after)?;
                    println!("predicted delta (both printed forms agree): {}", rep.value);
                }
                MoveKindArg::Direct => {
                    let rep = perestroika::chmutov_delta_direct(&before, &after)?;
                    println!("predicted delta (both printed forms agree): {}", rep.value);
                }
                MoveKindArg::Triple => {
                    let (sb, sa) = receipt.triangle_signs.unwrap_or((0, 0));
                    println!("vanishing triangle signs: {sb} -> {sa}");
                    println!("predicted delta: 0");
                }
            }
            if let Some(prefix) = out_prefix {
                let meta = formats::Metadata::default();
                let before_path = prefix.with_extension("before.divide");
                let after_path = prefix.with_extension("after.divide");
                std::fs::write(&before_path, formats::to_divide_file(before.curve(), &meta))?;
                std::fs::write(&after_path, formats::to_divide_file(after.curve(), &meta))?;
                println!("wrote {} and {}", before_path.display(), after_path.display());
            }
            Ok(true)
        }
    }
}
