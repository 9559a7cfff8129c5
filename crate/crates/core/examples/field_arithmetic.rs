//! Exact arithmetic in Z[θ] with certified embeddings.
//!
//! cargo run --example field_arithmetic

use num_bigint::BigInt;
use num_rational::BigRational;
use sumprod::rational::to_f64;
use sumprod::{FieldContext, Result};

fn main() -> Result<()> {
    let ctx = FieldContext::builtin("zeta7plus")?;
    println!("f = {:?}, degree {}, disc {}", ctx.spec().coeffs, ctx.degree(), ctx.disc());

    let theta = ctx.theta();
    let a = ctx.element(&[1, 1, 0])?;
    let b = ctx.pow(&theta, 5)?;
    let prod = ctx.mul(&a, &b)?;
    println!("(1+θ)·θ^5 = {prod}");
    println!("N(1+θ) = {}, unit: {}", ctx.norm(&a)?, ctx.is_unit(&a)?);

    let width = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 40));
    for i in 0..ctx.degree() {
        let iv = ctx.embed(&prod, i, &width)?;
        println!("σ_{i}((1+θ)θ^5) ∈ [{:.12}, {:.12}]", to_f64(&iv.lo), to_f64(&iv.hi));
    }

    let golden = FieldContext::builtin("golden")?;
    let reg = golden.regulator_rank1()?;
    println!("golden: fundamental unit {}, regulator {:.12}", reg.unit, reg.value());
    Ok(())
}
