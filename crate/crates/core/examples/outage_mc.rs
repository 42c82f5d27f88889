//! URLLC outage under Rayleigh fading: Monte Carlo against the exact
//! single-resource formula, then the diversity gain of spreading the same
//! payload over more resources.
//!
//!     cargo run --release --example outage_mc

use noma_slicing::outage::{mc_outage, outage_closed_form_1fr, OutagePoint, DEFAULT_CHUNK};
use noma_slicing::stats::binomial_sd;

fn main() -> noma_slicing::Result<()> {
    let n = 1_000_000;
    println!("single resource, r_bar = 1, n = {n}");
    println!("{:>8} {:>8} {:>12} {:>12} {:>7}", "s[dB]", "i[dB]", "exact", "MC", "z");
    for (s_db, i_db) in [(10.0, f64::NEG_INFINITY), (20.0, 0.0), (20.0, 10.0), (30.0, 15.0)] {
        let s = 10f64.powf(s_db / 10.0);
        let i = if i_db == f64::NEG_INFINITY { 0.0 } else { 10f64.powf(i_db / 10.0) };
        let exact = outage_closed_form_1fr(s, i, 1.0);
        let mc = mc_outage(&OutagePoint::new(s, i, 1, 1.0)?, n, 7, DEFAULT_CHUNK)?;
        let z = (mc.estimate - exact) / binomial_sd(exact, n);
        println!("{s_db:>8} {i_db:>8} {exact:>12.4e} {:>12.4e} {z:>7.2}", mc.estimate);
    }

    println!("\nsame 1 bit over F_u resources, s = 20 dB, no interference");
    for f_u in [1, 2, 3, 6, 12] {
        let p = OutagePoint::new(100.0, 0.0, f_u, 1.0 / f_u as f64)?;
        let mc = mc_outage(&p, n, 7, DEFAULT_CHUNK)?;
        println!("F_u = {f_u:>2}: outage {:.3e} (95% upper {:.3e})", mc.estimate, mc.upper95);
    }
    Ok(())
}
