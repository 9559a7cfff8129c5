//! Counting solutions of x_1 + ... + x_k = 1 among units in a box.
//!
//! cargo run --example unit_equation

use num_bigint::BigInt;
use num_rational::BigRational;
use sumprod::linrel::{self, SolutionQuery};
use sumprod::{boxenum, FieldContext, Result};

fn main() -> Result<()> {
    let one = BigRational::from_integer(BigInt::from(1));
    for name in ["golden", "sqrt2", "zeta7plus"] {
        let ctx = FieldContext::builtin(name)?;
        let s = boxenum::enum_unit_box(&ctx, &one);
        for k in 2..=3 {
            let all = linrel::count_solutions(&SolutionQuery::new(&s, k))?;
            let mut nd = SolutionQuery::new(&s, k);
            nd.nondegenerate_only = true;
            let nondeg = linrel::count_solutions(&nd)?;
            let (ph, _) = linrel::pigeonhole_report(&s, k, linrel::DEFAULT_BUDGET)?;
            println!(
                "{name:>9} |S|={:>3} k={k}: {all} solutions ({nondeg} nondegenerate), max fiber {} >= {:.2}",
                s.len(),
                ph.max_fiber,
                ph.bound
            );
        }
    }
    let ctx = FieldContext::builtin("golden")?;
    let s = boxenum::enum_unit_box(&ctx, &one);
    for sol in linrel::list_solutions(&SolutionQuery::new(&s, 2))? {
        println!("  {} + {} = 1", sol[0], sol[1]);
    }
    Ok(())
}
