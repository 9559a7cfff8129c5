//! The explicit-constant pipeline: coefficients, savings and the optimizer.
//!
//! cargo run --example explicit_constants

use sumprod::bounds::{self, ExplicitConstants};
use sumprod::Result;

fn main() -> Result<()> {
    let k = ExplicitConstants::default();
    let b = bounds::coefficient_bundle(&k);
    println!("K1a {:.1}  K1b {:.1}  K2a {:.1}  K2b {:.1}  s {:.4e}", b.k1a, b.k1b, b.k2a, b.k2b, b.s);

    let s = bounds::saving_at(&k, 1140402.0, 1140402.0)?;
    println!("saving at Y = ln X = 1140402: product {:.4e}, sum {:.4e}", s.product_saving, s.sum_saving);

    let opt = bounds::optimize_c(&k)?;
    println!("optimum: c* = {:.4e} at Y = {:.0}, ln X = {:.0} ({:?} active)", opt.c_star, opt.y_star, opt.ln_x_star, opt.active);

    for (q, alpha, beta, a, b) in bounds::PUBLISHED_ROWS {
        let c = bounds::ff_exponent_conditions(q, alpha, beta)?;
        println!("q={q:>4}: a-condition {:.4} (quoted {a}), b-condition {:.4} (quoted {b})", c.a_rhs, c.b_applicable());
    }
    Ok(())
}
