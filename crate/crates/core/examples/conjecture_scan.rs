//! A seeded scan of constructible spaces against the f-vector bounds.

use tropls::scan::{conjecture_scan, worker_count, Family};

fn main() -> tropls::Result<()> {
    let report = conjecture_scan(Family::Constructible, &[5, 6], &[2, 3], 0x5eed, 3, worker_count()?)?;
    for row in &report.rows {
        println!("{row}");
    }
    println!("violations: {}", report.violations());
    Ok(())
}
