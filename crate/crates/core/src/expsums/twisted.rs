use super::kloosterman::merge_all;
use super::{Method, PhaseTally, SumValue};
use crate::error::Result;
use crate::lfun::FundamentalDiscriminant;
use crate::matcore::arith::lcm;
use crate::matcore::gaussian::{gaussian_totient, go2_gaussian};
use crate::matcore::IntMat2;
use crate::sp4::CosetTable;

/// `Σ_{μ1 mod [q1, det C]} Σ_{μ2 mod [q2, det C]} χ_{q1}(μ1) χ_{q2}(μ2) K(μ2·I, μ1·I; C)`
/// for `C ∈ GO₂(ℤ)`, by enumeration.
pub fn twisted_average(
    c: &IntMat2,
    q1: FundamentalDiscriminant,
    q2: FundamentalDiscriminant,
) -> Result<SumValue> {
    go2_gaussian(c)?;
    let table = CosetTable::new(c)?;
    let m = table.modulus;
    let l1 = lcm(q1.get().abs(), m);
    let l2 = lcm(q2.get().abs(), m);
    // tr(AC⁻¹·μ2 I) + tr(C⁻¹D·μ1 I) = (μ2·tr X + μ1·tr P)/m
    let traces: Vec<(i64, i64)> = table
        .cosets
        .iter()
        .map(|x| (x.x[0] + x.x[2], x.p[0] + x.p[2]))
        .collect();
    let rows: Vec<PhaseTally> = (0..l1)
        .map(|mu1| {
            let mut tally = PhaseTally::new(m);
            let w1 = q1.chi(mu1) as i64;
            for mu2 in 0..l2 {
                let w = w1 * q2.chi(mu2) as i64;
                for &(tx, tp) in &traces {
                    tally.add(mu2 * tx + mu1 * tp, w);
                }
            }
            tally
        })
        .collect();
    Ok(merge_all(rows, m).into_value(Method::Brute))
}

/// `δ_{q1 = q2 = 1}·|det C|²·φ(x + iy)` for `C = [[x, y], [∓y, ±x]]`.
pub fn twisted_average_closed_form(
    c: &IntMat2,
    q1: FundamentalDiscriminant,
    q2: FundamentalDiscriminant,
) -> Result<i64> {
    let g = go2_gaussian(c)?;
    if q1.get() != 1 || q2.get() != 1 {
        return Ok(0);
    }
    let det = c.det().abs();
    Ok(det * det * gaussian_totient(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn fd(q: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(q).unwrap()
    }

    #[test]
    fn examples() {
        let one = fd(1);
        let v = twisted_average(&IntMat2::IDENTITY, one, one).unwrap();
        assert!((v.value.re - 1.0).abs() < 1e-12);
        let c = IntMat2::new(1, 1, -1, 1);
        let v = twisted_average(&c, one, one).unwrap();
        assert!((v.value.re - 4.0).abs() < 1e-12 && v.value.im.abs() < 1e-12);
        assert_eq!(twisted_average_closed_form(&c, one, one), Ok(4));
        let v = twisted_average(&IntMat2::IDENTITY, fd(-4), one).unwrap();
        assert!(v.value.norm() < 1e-12);
        assert_eq!(
            twisted_average(&IntMat2::new(1, 2, 3, 4), one, one),
            Err(Error::NotSimilitude)
        );
    }
}
