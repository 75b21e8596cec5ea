//! Bernoulli numbers mod p, Z(k), L(2) and power sums.

use fmzv::bernoulli::{bernoulli_mod, power_sum_closed, power_sum_oracle, Zk, L2};
use fmzv::modmath::fermat_quotient;
use fmzv::Prime;

fn main() -> fmzv::Result<()> {
    let p = Prime::new(37)?;
    let bs: Vec<String> = (0..=12).map(|n| bernoulli_mod(n, p).map(|b| b.to_string())).collect::<Result<_, _>>()?;
    println!("B_0..B_12 mod {p}: {}", bs.join(" "));
    // 37 is irregular: it divides the numerator of B_32
    println!("B_32 mod {p} = {}", bernoulli_mod(32, p)?);

    for p in [11u64, 13, 101, 1009] {
        let p = Prime::new(p)?;
        let z: Vec<String> = (2..=7).map(|k| Zk(k, p).map(|v| v.to_string())).collect::<Result<_, _>>()?;
        println!("p = {p:>4}: L(2) = {:>3} (q_3 = {:>3}), Z(2..7) = {}", L2(p), fermat_quotient(3, p), z.join(" "));
    }

    let p = Prime::new(1009)?;
    let (m, n) = (500, 7);
    println!(
        "sum_{{a<{m}}} a^{n} mod {p}: direct {}, via Bernoulli polynomials {}",
        power_sum_oracle(m, n, p),
        power_sum_closed(m, n, p)?
    );
    Ok(())
}
