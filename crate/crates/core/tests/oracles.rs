//! Cross-checks of library routines against slow, independent
//! recomputations written from first principles.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use redei_core::codes::{
    enumerator_brute_force, enumerator_from_spectrum, GeneratorMatrix, ProjectiveSystem,
};
use redei_core::geometry::all_lines;
use redei_core::linsets::build_linear_set;
use redei_core::pointsets::{build_pointset, line_spectrum, line_spectrum_by_lines, Kind};
use redei_core::{FieldContext, Gf, QPolynomial};

fn ctx(p: u32, h: u32, n: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(p, h, n).unwrap())
}

fn random_poly(field: &Arc<FieldContext>, rng: &mut ChaCha8Rng) -> QPolynomial {
    let c = (0..field.n())
        .map(|_| Gf(rng.gen_range(0..field.order())))
        .collect();
    QPolynomial::new(field.clone(), c).unwrap()
}

/// `a mod m` over GF(p), both low degree first, `m` monic.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let d = m.len() - 1;
    while r.len() > d {
        let lead = r.pop().unwrap();
        let shift = r.len() - d;
        for (i, &c) in m[..d].iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
        }
    }
    r
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (v % p as u64) as u32;
            v /= p as u64;
            d
        })
        .collect()
}

fn irreducible_by_trial_division(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        for low in 0..(p as u64).pow(d as u32) {
            let mut div = digits(low, p, d);
            div.push(1);
            if poly_rem(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[test]
fn default_modulus_is_first_irreducible() {
    for (p, n) in [
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (2, 8),
        (2, 10),
        (3, 2),
        (3, 3),
        (3, 4),
        (5, 2),
        (5, 3),
        (7, 2),
    ] {
        let first = (0..(p as u64).pow(n))
            .map(|low| {
                let mut m = digits(low, p, n as usize);
                m.push(1);
                m
            })
            .find(|m| irreducible_by_trial_division(m, p))
            .unwrap();
        assert_eq!(ctx(p, 1, n).ext_modulus(), &first[..], "p={p} n={n}");
    }
}

#[test]
fn multiplication_matches_polynomial_arithmetic() {
    for (p, n) in [(2, 3), (2, 5), (3, 3), (5, 2)] {
        let f = ctx(p, 1, n);
        let m = f.ext_modulus().to_vec();
        for a in f.elements() {
            for b in f.elements() {
                let (da, db) = (
                    digits(a.0 as u64, p, n as usize),
                    digits(b.0 as u64, p, n as usize),
                );
                let mut prod = vec![0u32; 2 * n as usize - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_rem(&prod, &m, p);
                let v = r
                    .iter()
                    .rev()
                    .fold(0u64, |acc, &d| acc * p as u64 + d as u64);
                assert_eq!(f.mul(a, b).0 as u64, v);
            }
        }
    }
}

#[test]
fn tower_fields_are_fields() {
    for (p, h, n) in [(2, 2, 2), (2, 2, 3), (3, 2, 2), (2, 3, 2)] {
        let f = ctx(p, h, n);
        let g = f.generator();
        let mut x = g;
        let mut order = 1;
        while x != Gf::ONE {
            x = f.mul(x, g);
            order += 1;
        }
        assert_eq!(order, f.order() - 1);
        for a in f.nonzero_elements() {
            assert_eq!(f.mul(a, f.inv(a)), Gf::ONE);
        }
    }
}

#[test]
fn weights_by_counting_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, h, n) in [(2, 1, 4), (3, 1, 3), (2, 2, 3), (2, 1, 6)] {
        let f = ctx(p, h, n);
        for _ in 0..10 {
            let g = random_poly(&f, &mut rng);
            let table = g.eval_table();
            let prof = build_linear_set(&g);
            for (pt, &w) in prof.points.iter().zip(&prof.weights) {
                let m = pt.coords()[1];
                let sols = f
                    .elements()
                    .filter(|&x| table[x.index()] == f.mul(m, x))
                    .count() as u64;
                assert_eq!(sols, (f.q() as u64).pow(w));
            }
            let slopes: std::collections::BTreeSet<Gf> = f
                .nonzero_elements()
                .map(|x| f.div(table[x.index()], x))
                .collect();
            assert_eq!(slopes.len() as u64, prof.size());
        }
    }
}

#[test]
fn composition_is_function_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, h, n) in [(2, 1, 5), (3, 1, 3), (2, 2, 3)] {
        let f = ctx(p, h, n);
        for _ in 0..10 {
            let (a, b) = (random_poly(&f, &mut rng), random_poly(&f, &mut rng));
            let c = a.compose(&b).unwrap();
            for x in f.elements() {
                assert_eq!(c.eval(x), a.eval(b.eval(x)));
            }
        }
    }
}

#[test]
fn spectra_by_direct_incidence() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, h, n) in [(2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 1, 4)] {
        let f = ctx(p, h, n);
        for _ in 0..4 {
            let g = random_poly(&f, &mut rng);
            for kind in [Kind::B, Kind::C] {
                let set = build_pointset(&g, kind);
                let mut naive: BTreeMap<u64, u64> = BTreeMap::new();
                for line in all_lines(&f) {
                    let l = line.0.coords();
                    let hits = set
                        .points
                        .points()
                        .iter()
                        .filter(|pt| {
                            let c = pt.coords();
                            (0..3)
                                .fold(Gf::ZERO, |acc, i| f.add(acc, f.mul(l[i], c[i])))
                                .is_zero()
                        })
                        .count() as u64;
                    *naive.entry(hits).or_default() += 1;
                }
                naive.retain(|_, v| *v > 0);
                assert_eq!(line_spectrum(&set).counts, naive);
                assert_eq!(line_spectrum_by_lines(&f, &set.points).counts, naive);
            }
        }
    }
}

#[test]
fn enumerators_by_listing_codewords() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, h, n) in [(2, 1, 3), (3, 1, 2), (2, 2, 2)] {
        let f = ctx(p, h, n);
        for _ in 0..4 {
            let g = random_poly(&f, &mut rng);
            for kind in [Kind::B, Kind::C] {
                let set = build_pointset(&g, kind);
                let Ok(sys) = ProjectiveSystem::from_pointset(&set) else {
                    continue;
                };
                let gm = GeneratorMatrix::from_system(&sys);
                let mut a: BTreeMap<u64, u64> = BTreeMap::new();
                for u0 in f.elements() {
                    for u1 in f.elements() {
                        for u2 in f.elements() {
                            let w = gm
                                .columns()
                                .iter()
                                .filter(|c| {
                                    let s = f.add(
                                        f.add(f.mul(u0, c[0]), f.mul(u1, c[1])),
                                        f.mul(u2, c[2]),
                                    );
                                    !s.is_zero()
                                })
                                .count() as u64;
                            *a.entry(w).or_default() += 1;
                        }
                    }
                }
                let spec = line_spectrum(&set);
                let from_spec = enumerator_from_spectrum(&spec, set.len(), f.order() as u64);
                assert_eq!(from_spec.a, a);
                assert_eq!(enumerator_brute_force(&gm).unwrap().a, a);
            }
        }
    }
}

#[test]
fn interpolation_recovers_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = ctx(3, 1, 4);
    for _ in 0..10 {
        let g = random_poly(&f, &mut rng);
        let vals: Vec<Gf> = (0..4).map(|j| g.eval(f.basis(j))).collect();
        assert_eq!(QPolynomial::from_basis_values(f.clone(), &vals).unwrap(), g);
    }
}
