//! P, G and A = PG inside polynomial section spaces over F_q.
//!
//! cargo run --example function_field

use std::sync::Arc;

use sumprod::funcfield;
use sumprod::gf::FiniteField;
use sumprod::Result;

fn main() -> Result<()> {
    for (q, dp, dg) in [(2, 2, 1), (3, 3, 1), (4, 4, 1)] {
        let field = Arc::new(FiniteField::new(q)?);
        let c = funcfield::build_a_ff(&field, dp, dg)?;
        let g = funcfield::ff_growth_report(&c)?;
        println!(
            "q={q} dP={dp} dG={dg}: |P|={} |G|={} |A|={} |A+A|={} (<= {}) |AA|={}",
            c.p.len(),
            c.g.len(),
            c.a.len(),
            g.report.sum_size,
            g.sum_bound,
            g.report.prod_size
        );
    }
    let field = Arc::new(FiniteField::new(2)?);
    let c = funcfield::build_a_ff(&field, 2, 1)?;
    let id = funcfield::ff_to_rational(&c, &[1, 1, 1])?;
    for e in &id.entries {
        println!("{} = {}", e.display, e.reduced);
    }
    Ok(())
}
