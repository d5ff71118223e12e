use qk_core::suite::*;
fn main() {
    let r = run(&SuiteOptions { seed: 42, ..Default::default() });
    for c in &r.criteria {
        println!("{} {} {:?} {}", c.id, c.passed, c.elapsed, c.summary);
    }
}
