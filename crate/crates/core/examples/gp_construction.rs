//! The A = G·P construction: a unit window G times an additive window P.
//!
//! cargo run --example gp_construction

use num_bigint::BigInt;
use num_rational::BigRational;
use sumprod::construct;
use sumprod::setcalc::growth_report;
use sumprod::{FieldContext, Result};

fn main() -> Result<()> {
    let ctx = FieldContext::builtin("sqrt2")?;
    let r = BigRational::from_integer(BigInt::from(3));
    let y = BigRational::from_integer(BigInt::from(1));
    let c = construct::build_gp(&ctx, 10, &r, &y)?;
    println!("|G| = {}, |P| = {}, |A| = {}, direct product: {}", c.g.len(), c.p.len(), c.a.len(), c.direct_product);

    let env = construct::verify_gp_envelopes(&c)?;
    println!("|A+A| = {} inside B+(4X e^Y) (size {}): {}", env.sum_size, env.sum_box_size, env.sum_in_box);
    println!("|AA| = {} <= |GG|·|PP| = {}: {}", env.prod_size, env.gg_times_pp, env.prod_in_gg_pp);

    let g = growth_report(&c.a)?;
    println!("deltaPlus {:.4}, deltaTimes {:.4}", g.delta_plus, g.delta_times);

    let m = construct::build_mult_only(&ctx, &y)?;
    for k in [2, 3] {
        let e = construct::verify_mult_envelopes(&m, k)?;
        println!("B×(1), k={k}: |A^(k)| = {}, |kA| = {}", e.k_fold_product_size, e.k_fold_sum_size);
    }
    Ok(())
}
