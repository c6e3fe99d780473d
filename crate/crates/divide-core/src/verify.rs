//! Cross-validation of the two Casson pipelines over batches of divides:
//! the Arnold-invariant formula against the Hirasawa/Alexander oracle.

use crate::corpus::{random_divide, GenParams};
use crate::divide::Divide;
use crate::error::Result;
use crate::exec;
use crate::hirasawa;

#[derive(Clone, Debug)]
pub struct VerifyCase {
    pub name: String,
    pub crossings: usize,
    pub formula: i64,
    pub oracle: i64,
}

impl VerifyCase {
    pub fn ok(&self) -> bool {
        self.formula == self.oracle
    }
}

/// Run both pipelines on one divide. With `corrupt` set, one crossing of
/// the knot diagram is switched before the oracle runs — a negative control
/// that must produce mismatches.
pub fn verify_one(name: &str, divide: &Divide, corrupt: bool) -> Result<VerifyCase> {
    let formula = divide.casson_formula()?;
    let h = hirasawa::build_diagram(divide)?;
    let diagram = if corrupt && h.reduced.crossing_count() > 0 {
        h.reduced.switch_crossing(0)?
    } else {
        h.reduced.clone()
    };
    let oracle = crate::alexander::casson_of_diagram(&diagram)?;
    Ok(VerifyCase {
        name: name.to_string(),
        crossings: divide.double_points().len(),
        formula,
        oracle,
    })
}

/// Verify a batch in parallel (input order preserved).
pub fn verify_batch(cases: &[(String, Divide)], corrupt: bool) -> Vec<Result<VerifyCase>> {
    exec::map_collect(cases, |(name, d)| verify_one(name, d, corrupt))
}

/// Sequential twin of [`verify_batch`], kept for benchmarks.
pub fn verify_batch_seq(cases: &[(String, Divide)], corrupt: bool) -> Vec<Result<VerifyCase>> {
    exec::map_collect_seq(cases, |(name, d)| verify_one(name, d, corrupt))
}

/// Deterministic random batch: `count` seeded divides.
pub fn random_batch(seed: u64, count: usize, params: &GenParams) -> Vec<(String, Divide)> {
    let seeds: Vec<u64> = (0..count as u64).collect();
    exec::map_collect(&seeds, |i| {
        let s = seed.wrapping_add(*i);
        (format!("random-{s}"), random_divide(s, params))
    })
}

/// Render the batch outcome as a deterministic text report. Returns the
/// report and whether every case agreed.
pub fn summarize(results: &[Result<VerifyCase>]) -> (String, bool) {
    let mut out = String::new();
    let mut all_ok = true;
    let mut agree = 0usize;
    let mut done = 0usize;
    for r in results {
        match r {
            Ok(case) => {
                done += 1;
                if case.ok() {
                    agree += 1;
                } else {
                    all_ok = false;
                }
                out.push_str(&format!(
                    "{}: crossings={} formula={} oracle={} {}\n",
                    case.name,
                    case.crossings,
                    case.formula,
                    case.oracle,
                    if case.ok() { "equal" } else { "UNEQUAL" }
                ));
            }
            Err(e) => {
                all_ok = false;
                out.push_str(&format!("error: {e}\n"));
            }
        }
    }
    out.push_str(&format!("summary: {agree}/{done} equal\n"));
    (out, all_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn small_random_batch_agrees() {
        let params = GenParams { max_crossings: 4, max_steps: 40 };
        let batch = random_batch(7, 6, &params);
        let results = verify_batch(&batch, false);
        let (report, ok) = summarize(&results);
        assert!(ok, "{report}");
        assert!(report.contains("summary: 6/6 equal"));
    }

    #[test]
    fn corrupted_diagram_mismatches() {
        // a divide whose knot actually has crossings
        let d = corpus::standard_divide(1).unwrap();
        let case = verify_one("D_1", &d, true).unwrap();
        assert!(!case.ok(), "corruption must flip the oracle value");
    }

    #[test]
    fn batch_report_is_deterministic() {
        let params = GenParams::default();
        let batch = random_batch(3, 3, &params);
        let (r1, _) = summarize(&verify_batch(&batch, false));
        let (r2, _) = summarize(&verify_batch(&batch, false));
        assert_eq!(r1, r2);
    }
}
