//! Write the standard divide `D_n` as a divide file on stdout:
//! `cargo run -p divide-core --example mkfixture -- 3 > D3.divide`

use divide_core::corpus;
use divide_core::formats::{to_divide_file, Metadata};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let d = corpus::standard_divide(n).expect("standard divide");
    let meta = Metadata { name: Some(format!("D_{n}")), seed: None, provenance: None };
    print!("{}", to_divide_file(d.curve(), &meta));
}
