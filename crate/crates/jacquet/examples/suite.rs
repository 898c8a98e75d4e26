//! Runs the built-in check suite in process and prints one line per entry.

use jacquet::cli::{run_suite, SuiteArgs};

fn main() -> jacquet::Result<()> {
    let r = run_suite(&SuiteArgs { only: None, golden: None })?;
    for item in &r.items {
        println!("{:<26} exit {}", item.name, item.exit_code);
    }
    println!("verdict: {:?}", r.verdict);
    Ok(())
}
