//! Runs a check selector on a carrier: `run_checks <system> <bound|chain:count> <selector>`.
//! The system is `m32` or a value of `N`.

use std::time::Instant;

use odpn::enumeration::{enumerate_fragment, random_diagrams, Carrier, GenConfig};
use odpn::harness::{run_named_suite, RunOptions};
use odpn::SystemParams;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let params = match args[1].as_str() {
        "m32" => SystemParams::m32(),
        n => SystemParams::pi_n(n.parse().expect("N")),
    };
    let carrier = match args[2].strip_prefix("chain:") {
        Some(k) => {
            let mut cfg = GenConfig::new(params, 5);
            cfg.seed = 7;
            Carrier::from_diagrams(params, random_diagrams(&cfg, k.parse().expect("count")))
        }
        None => enumerate_fragment(&GenConfig::new(params, args[2].parse().expect("bound"))).expect("fragment"),
    };
    println!("# {} elements", carrier.len());
    let t = Instant::now();
    let out = run_named_suite(&carrier, &args[3], &RunOptions::default()).expect("run");
    for r in out {
        let mut rec = r.record();
        rec.truncate(600);
        println!("{rec}");
    }
    println!("# {:.1?}", t.elapsed());
}
