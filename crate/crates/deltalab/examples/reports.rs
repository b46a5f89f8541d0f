//! The reporting layer driving the CLI: reproduction tables with pass/fail
//! rows, property suites, and the three output formats.
//!
//! Run with: `cargo run --example reports`

use deltalab::report::{
    reproduce, suite, ReportFormat, ReproduceParams, ReproduceTable, SuiteName,
};
use deltalab::Result;

fn main() -> Result<()> {
    // A small reproduction table, rendered as text.
    let params = ReproduceParams {
        ns: vec![2, 3, 4],
        ..Default::default()
    };
    let rep = reproduce(ReproduceTable::Diameter2, &params)?;
    print!("{}", rep.render(ReportFormat::Text));
    assert!(rep.passed);

    // The same rows as CSV (the plotting hand-off).
    println!("\nCSV:");
    print!("{}", rep.render(ReportFormat::Csv));

    // Suites are deterministic: the same seed gives bit-identical JSON.
    let a = suite(SuiteName::Oracle, 11, 150)?;
    let b = suite(SuiteName::Oracle, 11, 150)?;
    assert_eq!(a.render(ReportFormat::Json), b.render(ReportFormat::Json));
    println!(
        "\nsuite oracle twice with seed 11: identical JSON, {} rows",
        a.rows.len()
    );
    assert!(a.passed);
    Ok(())
}
