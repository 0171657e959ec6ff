use dyadic_lattice::dirichlet::*;
use dyadic_lattice::measure::*;

fn main() {
    let law = k1_law(3, 4, 9, 1e-12).unwrap();
    let h = harmonic_histogram(&law, 12, 8, true).unwrap();
    let hist = &h.histogram;
    let lower: f64 = hist.mass()[..hist.bins() / 2].iter().sum();
    println!("small scale: mass[0,1/2)-1/2 = {:.3e}, mirror = {:.3e}", lower - 0.5, hist.mirror_asymmetry());
    let tb = two_bit_stats(hist);
    println!("excess = {:.6e}  m00={:.6} m11={:.6}", tb.excess(), tb.m00, tb.m11);
    // fixed-width marginal trend
    let mut prev: Option<StationaryChain> = None;
    for l in 5..=11u32 {
        let c = truncated_stationary(l, 1e-13, false).unwrap();
        if let Some(p) = &prev {
            let a = c.marginal(4);
            let b = p.marginal(4);
            let l1: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).sum();
            println!("L={l}: 4-bit marginal L1 vs prev = {:.3e}", l1);
        }
        prev = Some(c);
    }
}
