//! Weight enumerators of the codes of `B_f` and `C_f` written directly in
//! terms of the weight distribution of `D_f`.
//!
//! Every enumerator here has the shape `1 + (Q - 1) * sum_k c_k z^(w_k)`.

use std::collections::BTreeMap;

use super::{CodeError, WeightEnumerator};
use crate::linsets::{theta, Classification, LinearSetProfile};
use crate::pointsets::Kind;

/// Weight distribution data: `(q, n, |D|, [(i_j, N_{i_j})])`.
#[derive(Clone, Debug)]
struct Data {
    q: u64,
    n: u32,
    d: u64,
    weights: Vec<(u32, u64)>,
}

impl Data {
    fn from_profile(p: &LinearSetProfile) -> Result<Self, CodeError> {
        if p.min_weight() != 1 {
            return Err(CodeError::MinWeightNotOne(p.min_weight()));
        }
        Ok(Self {
            q: p.q as u64,
            n: p.n,
            d: p.size(),
            weights: p
                .distribution
                .iter()
                .copied()
                .zip(p.frequencies.iter().copied())
                .collect(),
        })
    }

    fn big_q(&self) -> u64 {
        self.q.pow(self.n)
    }

    fn nb(&self) -> u64 {
        self.big_q() + self.d
    }

    fn nc(&self) -> u64 {
        2 * self.big_q() + 1 - self.d
    }

    fn qp(&self, e: u32) -> u64 {
        self.q.pow(e)
    }

    fn freq(&self, w: u32) -> u64 {
        self.weights.iter().find(|x| x.0 == w).map_or(0, |x| x.1)
    }
}

fn assemble(length: u64, big_q: u64, terms: &[(u64, u64)]) -> WeightEnumerator {
    let mut a = BTreeMap::from([(0, 1)]);
    for &(w, c) in terms {
        *a.entry(w).or_insert(0) += (big_q - 1) * c;
    }
    WeightEnumerator::from_counts(length, big_q, a)
}

/// Kind B with largest weight below `n - 1`.
fn b_short(x: &Data) -> WeightEnumerator {
    let (bq, nb, d) = (x.big_q(), x.nb(), x.d);
    let mut t = vec![(nb - d, 1)];
    let mut last = bq * (bq + 1 - d);
    for &(i, ni) in &x.weights {
        t.push((nb - x.qp(i) - 1, ni * x.qp(x.n - i)));
        last += ni * (bq - x.qp(x.n - i));
    }
    t.push((nb - 1, last));
    assemble(nb, bq, &t)
}

/// Kind B with distribution `(1, n - 1)`, `n > 2`.
fn b_coweight_one(x: &Data) -> WeightEnumerator {
    let (q, bq, nb) = (x.q, x.big_q(), x.nb());
    let h = x.qp(x.n - 1);
    let t = [
        (nb - h - 1, 1 + q),
        (nb - q - 1, h * h),
        (nb - 1, bq * (bq - h) + h * (bq - h) + bq - q),
    ];
    assemble(nb, bq, &t)
}

/// Kind B over PG(2, q^2) with `D_f` scattered.
fn b_plane_n2(x: &Data) -> WeightEnumerator {
    let (q, bq, nb) = (x.q, x.big_q(), x.nb());
    let t = [
        (nb - q - 1, q * q + q + 1),
        (nb - 1, q * q * (q * q - q) + (q + 1) * (q * q - q)),
    ];
    assemble(nb, bq, &t)
}

/// Kind C with `q > 2`.
fn c_large_q(x: &Data) -> WeightEnumerator {
    let (bq, nc, d) = (x.big_q(), x.nc(), x.d);
    let mut t = vec![(nc + d - bq - 1, 1), (nc - 2, bq * (bq + 1 - d))];
    let mut last = 0;
    for &(i, ni) in &x.weights {
        t.push((nc - x.qp(i), ni * x.qp(x.n - i)));
        last += ni * (bq - x.qp(x.n - i));
    }
    t.push((nc, last));
    assemble(nc, bq, &t)
}

/// Kind C with `q = 2` and at least three weights.
fn c_binary_many(x: &Data) -> WeightEnumerator {
    let (q, bq, nc, d) = (x.q, x.big_q(), x.nc(), x.d);
    let n1 = x.freq(1);
    let mut t = vec![
        (nc + d - bq - 1, 1),
        (nc - q, bq * (bq + 1 - d) + n1 * x.qp(x.n - 1)),
    ];
    let mut last = 0;
    for &(i, ni) in &x.weights {
        if i > 1 {
            t.push((nc - x.qp(i), ni * x.qp(x.n - i)));
        }
        last += ni * (bq - x.qp(x.n - i));
    }
    t.push((nc, last));
    assemble(nc, bq, &t)
}

/// Kind C with `q = 2` and distribution `(1, i)`.
fn c_binary_two(x: &Data) -> WeightEnumerator {
    let (q, bq, nc, d) = (x.q, x.big_q(), x.nc(), x.d);
    let (i, ni) = x.weights[1];
    let n1 = x.freq(1);
    let mid = (nc - q, bq * (bq + 1 - d) + n1 * x.qp(x.n - 1));
    let last = (nc, ni * (bq - x.qp(x.n - i)) + n1 * (bq - x.qp(x.n - 1)));
    let heavy = ni * x.qp(x.n - i);
    if ni == 1 {
        // the line at infinity meets C_f in 2^i points as well
        assemble(nc, bq, &[(nc - x.qp(i), heavy + 1), mid, last])
    } else {
        assemble(
            nc,
            bq,
            &[(nc + d - bq - 1, 1), (nc - x.qp(i), heavy), mid, last],
        )
    }
}

/// Kind C with `q = 2` and `D_f` scattered.
fn c_binary_scattered(x: &Data) -> WeightEnumerator {
    let (q, bq, nc) = (x.q, x.big_q(), x.nc());
    let h = x.qp(x.n - 1);
    let t = [
        (nc - q, 1 + x.qp(x.n + 1) + (bq - 1) * h),
        (nc, (bq - 1) * (bq - h)),
    ];
    assemble(nc, bq, &t)
}

fn b_dispatch(x: &Data) -> Result<WeightEnumerator, CodeError> {
    let i_t = x.weights.last().expect("nonempty").0;
    if i_t + 1 < x.n {
        Ok(b_short(x))
    } else if i_t + 1 == x.n && x.n > 2 {
        Ok(b_coweight_one(x))
    } else if x.n == 2 && x.weights.len() == 1 {
        Ok(b_plane_n2(x))
    } else {
        Err(CodeError::NoMatchingCase(format!(
            "kind B, distribution {:?}",
            x.weights
        )))
    }
}

fn c_dispatch(x: &Data) -> Result<WeightEnumerator, CodeError> {
    match (x.q, x.weights.len()) {
        (q, _) if q > 2 => Ok(c_large_q(x)),
        (_, 1) => Ok(c_binary_scattered(x)),
        (_, 2) => Ok(c_binary_two(x)),
        _ => Ok(c_binary_many(x)),
    }
}

pub fn closed_form_b(profile: &LinearSetProfile) -> Result<WeightEnumerator, CodeError> {
    b_dispatch(&Data::from_profile(profile)?)
}

pub fn closed_form_c(profile: &LinearSetProfile) -> Result<WeightEnumerator, CodeError> {
    c_dispatch(&Data::from_profile(profile)?)
}

pub fn closed_form(profile: &LinearSetProfile, kind: Kind) -> Result<WeightEnumerator, CodeError> {
    match kind {
        Kind::B => closed_form_b(profile),
        Kind::C => closed_form_c(profile),
    }
}

fn th(q: u64, i: i64) -> u64 {
    theta(q, i)
}

/// B code of an `i`-club, from `(q, n, i)` alone.
pub fn club_b(q: u64, n: u32, i: u32) -> WeightEnumerator {
    let bq = q.pow(n);
    let n1 = th(q, n as i64 - 1) - th(q, i as i64 - 1);
    let nb = bq + n1 + 1;
    if i + 1 == n && n > 2 {
        return b_coweight_one(&Data {
            q,
            n,
            d: n1 + 1,
            weights: vec![(1, n1), (i, 1)],
        });
    }
    let t = [
        (nb - n1 - 1, 1),
        (nb - q.pow(i) - 1, q.pow(n - i)),
        (nb - q - 1, n1 * q.pow(n - 1)),
        (
            nb - 1,
            bq * (bq - n1) + (bq - q.pow(n - i)) + n1 * (bq - q.pow(n - 1)),
        ),
    ];
    assemble(nb, bq, &t)
}

/// C code of an `i`-club, from `(q, n, i)` alone.
pub fn club_c(q: u64, n: u32, i: u32) -> WeightEnumerator {
    let bq = q.pow(n);
    let n1 = th(q, n as i64 - 1) - th(q, i as i64 - 1);
    let data = Data {
        q,
        n,
        d: n1 + 1,
        weights: vec![(1, n1), (i, 1)],
    };
    if q == 2 {
        return c_binary_two(&data);
    }
    let nc = data.nc();
    let t = [
        (nc - bq + n1, 1),
        (nc - q.pow(i), q.pow(n - i)),
        (nc - q, n1 * q.pow(n - 1)),
        (nc - 2, bq * (bq - n1)),
        (nc, bq - q.pow(n - i) + n1 * (bq - q.pow(n - 1))),
    ];
    assemble(nc, bq, &t)
}

/// B code of a scattered linear set, from `(q, n)` alone.
pub fn scattered_b(q: u64, n: u32) -> WeightEnumerator {
    let bq = q.pow(n);
    let tn = th(q, n as i64 - 1);
    let nb = th(q, n as i64);
    if n == 2 {
        let t = [
            (nb - q - 1, th(q, 2)),
            (nb - 1, q * q * (q * q - q) + (q + 1) * (q * q - q)),
        ];
        return assemble(nb, bq, &t);
    }
    let t = [
        (nb - tn, 1),
        (nb - q - 1, tn * q.pow(n - 1)),
        (nb - 1, bq * (bq + 1 - tn) + tn * (bq - q.pow(n - 1))),
    ];
    assemble(nb, bq, &t)
}

/// C code of a scattered linear set, from `(q, n)` alone.
pub fn scattered_c(q: u64, n: u32) -> WeightEnumerator {
    let bq = q.pow(n);
    let tn = th(q, n as i64 - 1);
    let data = Data {
        q,
        n,
        d: tn,
        weights: vec![(1, tn)],
    };
    if q == 2 {
        return c_binary_scattered(&data);
    }
    let nc = data.nc();
    let t = [
        (nc + tn - bq - 1, 1),
        (nc - q, tn * q.pow(n - 1)),
        (nc - 2, bq * (bq + 1 - tn)),
        (nc, tn * (bq - q.pow(n - 1))),
    ];
    assemble(nc, bq, &t)
}

fn two_half_data(q: u64, n: u32) -> Data {
    let h = n / 2;
    let n1 = th(q, n as i64 - 1) - 2 * th(q, h as i64 - 1);
    Data {
        q,
        n,
        d: n1 + 2,
        weights: vec![(1, n1), (h, 2)],
    }
}

/// B code of a linear set with two points of weight `n/2`, `n > 2` even.
pub fn two_half_b(q: u64, n: u32) -> WeightEnumerator {
    let x = two_half_data(q, n);
    let (bq, nb, d, h) = (x.big_q(), x.nb(), x.d, n / 2);
    let n1 = x.weights[0].1;
    let t = [
        (nb - d, 1),
        (nb - q.pow(h) - 1, 2 * q.pow(h)),
        (nb - q - 1, n1 * q.pow(n - 1)),
        (
            nb - 1,
            bq * (bq + 1 - d) + 2 * (bq - q.pow(h)) + n1 * (bq - q.pow(n - 1)),
        ),
    ];
    assemble(nb, bq, &t)
}

/// C code of a linear set with two points of weight `n/2`, `n > 2` even.
pub fn two_half_c(q: u64, n: u32) -> WeightEnumerator {
    let x = two_half_data(q, n);
    if q == 2 {
        return c_binary_two(&x);
    }
    let (bq, nc, d, h) = (x.big_q(), x.nc(), x.d, n / 2);
    let n1 = x.weights[0].1;
    let t = [
        (nc + d - bq - 1, 1),
        (nc - q.pow(h), 2 * q.pow(h)),
        (nc - q, n1 * q.pow(n - 1)),
        (nc - 2, bq * (bq + 1 - d)),
        (nc, 2 * (bq - q.pow(h)) + n1 * (bq - q.pow(n - 1))),
    ];
    assemble(nc, bq, &t)
}

/// The enumerator predicted from the classification of `D_f` alone, or
/// `None` when the classification carries no dedicated formula.
pub fn specialized(
    profile: &LinearSetProfile,
    kind: Kind,
) -> Result<Option<WeightEnumerator>, CodeError> {
    let (q, n) = (profile.q as u64, profile.n);
    let e = match (profile.classify(), kind) {
        (Classification::Scattered, Kind::B) => scattered_b(q, n),
        (Classification::Scattered, Kind::C) => scattered_c(q, n),
        (Classification::Club(i), Kind::B) => club_b(q, n, i),
        (Classification::Club(i), Kind::C) => club_c(q, n, i),
        (Classification::TwoWeightHalf, _) if n <= 2 => {
            return Err(CodeError::NoMatchingCase(
                "two points of weight n/2 need n > 2".into(),
            ))
        }
        (Classification::TwoWeightHalf, Kind::B) => two_half_b(q, n),
        (Classification::TwoWeightHalf, Kind::C) => two_half_c(q, n),
        (Classification::General { .. }, _) => return Ok(None),
    };
    Ok(Some(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn small_binary_cases() {
        assert_eq!(
            scattered_b(2, 3).a,
            a(&[(0, 1), (8, 7), (12, 196), (14, 308)])
        );
        assert_eq!(
            club_b(2, 3, 2).a,
            a(&[(0, 1), (8, 21), (10, 112), (12, 378)])
        );
        assert_eq!(scattered_c(2, 3).a, a(&[(0, 1), (8, 315), (10, 196)]));
    }

    #[test]
    fn totals_hold_across_parameters() {
        for q in [2u64, 3, 4, 5] {
            for n in 2..=6u32 {
                if q.pow(n) > 1 << 12 {
                    continue;
                }
                let mut all = vec![scattered_b(q, n), scattered_c(q, n)];
                for i in 2..n {
                    all.push(club_b(q, n, i));
                    all.push(club_c(q, n, i));
                }
                if n % 2 == 0 && n > 2 {
                    all.push(two_half_b(q, n));
                    all.push(two_half_c(q, n));
                }
                for e in all {
                    assert!(e.is_consistent(), "q={q} n={n}: {e}");
                }
            }
        }
    }
}
