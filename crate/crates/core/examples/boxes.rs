//! Additive and unit boxes with their counting bounds, unit separation and slab volumes.
//!
//! cargo run --example boxes

use num_bigint::BigInt;
use num_rational::BigRational;
use sumprod::boxenum::{self, BoxKind};
use sumprod::{FieldContext, Result};

fn main() -> Result<()> {
    let one = BigRational::from_integer(BigInt::from(1));
    for name in ["sqrt2", "golden", "zeta7plus"] {
        let ctx = FieldContext::builtin(name)?;
        for x in [1, 2, 5] {
            let r = boxenum::check_ball_bounds(&ctx, BoxKind::Additive, &BigRational::from_integer(BigInt::from(x)))?;
            println!("{name:>9} |B+({x})| = {:>4}  bounds [{:.3}, {}]  ok {}", r.count, r.lower.unwrap(), r.upper, r.passed());
        }
        let units = boxenum::enum_unit_box(&ctx, &one);
        let r = boxenum::check_ball_bounds(&ctx, BoxKind::Unit, &one)?;
        println!("{name:>9} |B×(1)| = {:>4}  upper {}  ok {}", r.count, r.upper, r.passed());
        let sep = boxenum::separation_check(&ctx, &units)?;
        for w in sep.witnesses.iter().take(3) {
            println!("          {} has |σ_{}| = {:.4} ({:?} the golden window)", w.unit, w.index, w.value, w.side);
        }
    }
    for d in [2, 3, 10, 20] {
        let v = boxenum::slab_volume(d, &one);
        println!("slab d={d:>2}: volume {:.6} = {}·√{d}, ratio {:.4}", v.volume, v.coefficient, v.ratio);
    }
    Ok(())
}
