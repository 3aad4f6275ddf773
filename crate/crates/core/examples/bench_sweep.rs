use std::time::Instant;

use zetaposet::dsl;
use zetaposet::verify::{
    binary_posets_up_to_iso, verify_delta_closed_form, verify_dr_closed_form, SpanCache,
};

fn main() {
    let t0 = Instant::now();
    let mut cases = binary_posets_up_to_iso(4);
    println!("enumerated {} labeled posets in {:?}", cases.len(), t0.elapsed());
    cases.push(("w5".into(), dsl::w5()));
    cases.push(("diamond".into(), dsl::diamond()));
    cases.push(("example1-5".into(), dsl::example1(5).unwrap()));

    let mut cache = SpanCache::new();
    let t1 = Instant::now();
    let rep = verify_dr_closed_form(&cases, None, &mut cache).unwrap();
    println!(
        "dr sweep: {}/{} verified, {} failures, {:?}",
        rep.verified,
        rep.instances,
        rep.failures.len(),
        t1.elapsed()
    );
    for f in rep.failures.iter().take(5) {
        println!("  FAIL {}: {}", f.instance, f.detail);
    }

    let t2 = Instant::now();
    let rep1 = verify_dr_closed_form(&cases, Some(1), &mut cache).unwrap();
    println!(
        "d1 sweep: {}/{} verified, {:?}",
        rep1.verified,
        rep1.instances,
        t2.elapsed()
    );

    let t3 = Instant::now();
    let repd = verify_delta_closed_form(&binary_posets_up_to_iso(4), &mut cache).unwrap();
    println!(
        "delta sweep: {}/{} verified, {} failures, {:?}",
        repd.verified,
        repd.instances,
        repd.failures.len(),
        t3.elapsed()
    );
    for f in repd.failures.iter().take(5) {
        println!("  FAIL {}: {}", f.instance, f.detail);
    }
}
