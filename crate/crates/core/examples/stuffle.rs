//! The harmonic (stuffle) algebra on indices.

use fmzv::harmonic::{antipode_sum, evaluate_combination, star_expand, stuffle, IndexCombination};
use fmzv::{Index, Prime, Variant};

fn main() -> fmzv::Result<()> {
    let a = IndexCombination::from_index("2".parse()?);
    let b = IndexCombination::from_index("3".parse()?);
    let ab = stuffle(&a, &b);
    println!("[2] * [3] = {ab}");

    let x = IndexCombination::from_index("1,2".parse()?);
    let y = IndexCombination::from_index("3".parse()?);
    let xy = &x * &y;
    println!("[1,2] * [3] = {xy}");

    // the product is respected by evaluation
    let p = Prime::new(97)?;
    let lhs = evaluate_combination(&xy, Variant::Zeta2, p)?;
    let rhs = evaluate_combination(&x, Variant::Zeta2, p)? * evaluate_combination(&y, Variant::Zeta2, p)? % p.get();
    println!("mod {p}: zeta2 of product {lhs}, product of zeta2 {rhs}");

    let idx: Index = "1,2,3".parse()?;
    println!("star expansion of ({idx}) = {}", star_expand(&idx));
    println!("antipode sum of ({idx}) = {}", antipode_sum(&idx));
    Ok(())
}
