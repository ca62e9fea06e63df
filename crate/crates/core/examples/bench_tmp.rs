use delaycode::*;
use std::time::Instant;
fn main() {
    let d = samples::delta();
    let mu = samples::mu_abcd();
    let t = Instant::now();
    for _ in 0..1000 {
        search::is_admissible(&d, 2).unwrap();
    }
    println!("admissible {:?}", t.elapsed() / 1000);
    let t = Instant::now();
    for _ in 0..1000 {
        cost::average_length(&d, &mu).unwrap();
    }
    println!("L {:?}", t.elapsed() / 1000);
    let t = Instant::now();
    for _ in 0..1000 {
        followsets::FollowSets::build(&d, 2).unwrap();
    }
    println!("W {:?}", t.elapsed() / 1000);
}
