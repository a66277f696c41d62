// Running the property suites from code and reading the JSON report.
//
// ```text
// cargo run --example verification_suite
// ```

use std::error::Error;

use jordan_spheres::suites::{run_suite, Suite, SuiteConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let mut config = SuiteConfig::new("sum:mat:2,spin:4".parse()?, 42);
    config.samples = 10;
    for suite in [Suite::Axioms, Suite::Spheres, Suite::Spin] {
        let report = run_suite(suite, &config)?;
        println!(
            "{:<8} passed {} ({} checks, worst residual {:.1e})",
            report.suite,
            report.passed,
            report.checks.len(),
            report.max_residual().unwrap_or(0.0)
        );
        for check in &report.checks {
            println!("    {:<28} {}", check.name, check.anchor);
        }
    }

    // The same configuration always gives the same bytes.
    let first = run_suite(Suite::TwoProj, &config)?.to_json();
    let second = run_suite(Suite::TwoProj, &config)?.to_json();
    assert_eq!(first, second);
    println!(
        "two-proj report, {} bytes:\n{}",
        first.len(),
        first.lines().take(12).collect::<Vec<_>>().join("\n")
    );

    // Suites that make no sense for an algebra are refused rather than passed.
    let h3o = SuiteConfig::new("h3o".parse()?, 42);
    if let Err(err) = run_suite(Suite::Tingley, &h3o) {
        println!("tingley on h3o: {err}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
