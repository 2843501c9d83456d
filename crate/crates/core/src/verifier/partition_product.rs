//! `p(q, t)`: the largest product of `t` non-negative integers summing to `q`.

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use super::VerifierError;

/// Largest grid the dynamic-programming oracle accepts.
pub const DP_LIMIT: u64 = 60;

/// Balanced split: `q mod t` parts of `⌈q/t⌉`, the rest `⌊q/t⌋`.
pub fn p_exact(q: u64, t: u64) -> Result<BigUint, VerifierError> {
    if t == 0 {
        return Err(VerifierError::ZeroParts);
    }
    let (base, extra) = (q / t, q % t);
    let lo = Pow::pow(&BigUint::from(base), (t - extra) as u32);
    let hi = Pow::pow(&BigUint::from(base + 1), extra as u32);
    Ok(lo * hi)
}

/// Table `dp[t][q]` of maxima over all compositions, for `q, t ≤ limit`.
pub fn p_table(limit: u64) -> Result<Vec<Vec<u128>>, VerifierError> {
    if limit > DP_LIMIT {
        return Err(VerifierError::GridTooLarge { requested: limit, limit: DP_LIMIT });
    }
    let m = limit as usize;
    let mut dp = vec![vec![0u128; m + 1]; m + 1];
    dp[0][0] = 1;
    for t in 1..=m {
        for q in 0..=m {
            dp[t][q] = (0..=q).map(|last| last as u128 * dp[t - 1][q - last]).max().unwrap_or(0);
        }
    }
    Ok(dp)
}

/// The oracle value of `p(q, t)` by exhaustive composition search.
pub fn p_dp(q: u64, t: u64) -> Result<u128, VerifierError> {
    if t == 0 {
        return Err(VerifierError::ZeroParts);
    }
    Ok(p_table(q.max(t))?[t as usize][q as usize])
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyReport {
    pub qmax: u64,
    pub tmax: u64,
    pub oracle_checked: u64,
    pub oracle_mismatches: Vec<(u64, u64)>,
    pub supermultiplicative_checked: u64,
    pub supermultiplicative_violations: Vec<(u64, u64, u64, u64)>,
    pub amgm_checked: u64,
    pub amgm_violations: Vec<(u64, u64)>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.oracle_mismatches.is_empty()
            && self.supermultiplicative_violations.is_empty()
            && self.amgm_violations.is_empty()
    }
}

/// Exhaustive checks on the grid `q ≤ qmax`, `1 ≤ t ≤ tmax`:
/// balanced split against the oracle, `p(q,t) p(q',t') ≤ p(q+q',t+t')`
/// whenever the sums stay on the grid, and `p(q,t) t^t ≤ q^t`.
pub fn p_properties(qmax: u64, tmax: u64) -> Result<PropertyReport, VerifierError> {
    let dp = p_table(qmax.max(tmax))?;
    let mut report = PropertyReport { qmax, tmax, ..Default::default() };
    let balanced: Vec<Vec<u128>> = (0..=tmax)
        .map(|t| {
            (0..=qmax)
                .map(|q| if t == 0 { u128::from(q == 0) } else { u128::try_from(p_exact(q, t).unwrap()).unwrap() })
                .collect()
        })
        .collect();
    for t in 1..=tmax {
        for q in 0..=qmax {
            report.oracle_checked += 1;
            if balanced[t as usize][q as usize] != dp[t as usize][q as usize] {
                report.oracle_mismatches.push((q, t));
            }
            report.amgm_checked += 1;
            let lhs = BigUint::from(balanced[t as usize][q as usize]) * Pow::pow(&BigUint::from(t), t as u32);
            if lhs > Pow::pow(&BigUint::from(q), t as u32) {
                report.amgm_violations.push((q, t));
            }
        }
    }
    for t in 1..tmax {
        for t2 in 1..=tmax - t {
            for q in 0..=qmax {
                for q2 in 0..=qmax - q {
                    report.supermultiplicative_checked += 1;
                    let a = balanced[t as usize][q as usize] * balanced[t2 as usize][q2 as usize];
                    if a > balanced[(t + t2) as usize][(q + q2) as usize] {
                        report.supermultiplicative_violations.push((q, t, q2, t2));
                    }
                }
            }
        }
    }
    Ok(report)
}
