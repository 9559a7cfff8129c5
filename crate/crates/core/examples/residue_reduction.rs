//! Reducing a construction modulo a split prime above the stability threshold.
//!
//! cargo run --example residue_reduction

use num_bigint::BigInt;
use num_rational::BigRational;
use sumprod::setcalc::growth_report;
use sumprod::{boxenum, construct, residue};
use sumprod::{FieldContext, Result};

fn main() -> Result<()> {
    let ctx = FieldContext::builtin("sqrt2")?;
    let one = BigRational::from_integer(BigInt::from(1));
    let units = boxenum::enum_unit_box(&ctx, &one);
    let w = residue::split_witness(&ctx, 7).expect("7 splits in Z[√2]");
    let red = residue::reduce_set(&units, &w, 0, None)?;
    println!("B×(1) mod (7, θ ↦ {}) = {:?}", red.root, red.image.to_vec());

    let c = construct::build_gp(&ctx, 10, &BigRational::from_integer(BigInt::from(3)), &one)?;
    let t = residue::stability_threshold(&c);
    let w = residue::split_prime_above(&ctx, &t).expect("split prime fits in u64");
    let red = residue::reduce_set(&c.a, &w, 0, Some(&c.envelope()))?;
    println!("threshold {t}, p = {}, injective {} (predicted {:?})", w.p, red.injective, red.predicted_injective);
    let (ring, fp) = (growth_report(&c.a)?, growth_report(&red.image)?);
    println!("ring: |A+A| = {}, |AA| = {}", ring.sum_size, ring.prod_size);
    println!("F_p:  |A+A| = {}, |AA| = {}", fp.sum_size, fp.prod_size);
    println!("log|A| / log p = {:.4}", residue::realized_ratio(c.a.len(), w.p));
    Ok(())
}
