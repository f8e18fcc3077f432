use polynorm::steiner::{exact_smt, Instance};
use polynorm::testutil;
use polynorm::exactgeom::Vector;
use std::time::Instant;

fn main() {
    let hex = testutil::hexagon_space();
    let mut terminals = vec![Vector::zeros(2)];
    terminals.extend(hex.ball().vertices().iter().cloned());
    let inst = Instance::new(hex, terminals).unwrap();
    let t0 = Instant::now();
    let res = exact_smt(&inst).unwrap();
    println!("n=7 exact_smt: {} in {:?}", res.length, t0.elapsed());
}
