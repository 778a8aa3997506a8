//! Runs the ten reproduction criteria and prints one line each.

use recip::suite::Suite;

fn main() {
    let seed = std::env::var("RECIP_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240611);
    let suite = Suite::new(seed);
    let results = suite.run_all(|r| println!("{}", r.line()));
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
