//! Sumsets, product sets and growth exponents over several ambients.
//!
//! cargo run --example growth_report

use num_bigint::BigInt;
use num_rational::BigRational;
use sumprod::boxenum;
use sumprod::setcalc::{additive_energy, growth_report, k_fold_sum, ElementSet, PrimeField};
use sumprod::{FieldContext, Result};

fn main() -> Result<()> {
    let z = FieldContext::integers();
    let progression = ElementSet::from_elems(z.clone(), (1..=20).map(|i| z.integer(i)));
    let geometric = ElementSet::from_elems(z.clone(), (0..20).map(|i| z.integer(1 << i)));
    for (label, set) in [("1..20", &progression), ("2^0..2^19", &geometric)] {
        let g = growth_report(set)?;
        println!("{label:>10}: |A+A| = {:>3}, |AA| = {:>3}, solymosi {:.3}, E+ = {}", g.sum_size, g.prod_size, g.solymosi, additive_energy(set)?);
    }

    let f7 = PrimeField::new(7);
    let units = ElementSet::from_elems(f7, 1..7);
    println!("F_7^×: {:?}", growth_report(&units)?);

    let ctx = FieldContext::builtin("sqrt2")?;
    let b = boxenum::enum_unit_box(&ctx, &BigRational::from_integer(BigInt::from(1)));
    println!("B×(1) in Z[√2]: {:?}", growth_report(&b)?);
    println!("|3·B×(1)| = {}", k_fold_sum(&b, 3)?.len());
    Ok(())
}
