use std::sync::Arc;

use proptest::prelude::*;

use redei_core::codes::{enumerator_from_spectrum, ProjectiveSystem};
use redei_core::equivalence::{gamma_l_equivalent, SemilinearMap, Verdict, DEFAULT_BUDGET};
use redei_core::linsets::{build_linear_set, image_size};
use redei_core::pointsets::{build_pointset, line_spectrum, Kind};
use redei_core::{FieldContext, Gf, QPolynomial};

const FIELDS: [(u32, u32, u32); 6] = [
    (2, 1, 3),
    (2, 1, 4),
    (3, 1, 2),
    (3, 1, 3),
    (2, 2, 2),
    (5, 1, 2),
];

fn ctx(i: usize) -> Arc<FieldContext> {
    let (p, h, n) = FIELDS[i];
    Arc::new(FieldContext::new(p, h, n).unwrap())
}

fn poly(field: &Arc<FieldContext>, raw: &[u32]) -> QPolynomial {
    let c = raw.iter().map(|&v| Gf(v % field.order())).collect();
    QPolynomial::new(field.clone(), c).unwrap()
}

fn coeffs() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        (
            Just(i),
            prop::collection::vec(any::<u32>(), FIELDS[i].2 as usize),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_polynomials_are_linear((i, raw) in coeffs(), a in any::<u32>(), b in any::<u32>(), l in any::<u32>()) {
        let f = ctx(i);
        let g = poly(&f, &raw);
        let (x, y) = (Gf(a % f.order()), Gf(b % f.order()));
        let lam = f.from_base(l % f.q());
        prop_assert_eq!(g.eval(f.add(x, y)), f.add(g.eval(x), g.eval(y)));
        prop_assert_eq!(g.eval(f.mul(lam, x)), f.mul(lam, g.eval(x)));
    }

    #[test]
    fn image_times_kernel_is_field_order((i, raw) in coeffs()) {
        let f = ctx(i);
        let g = poly(&f, &raw);
        let image: std::collections::BTreeSet<Gf> = f.elements().map(|x| g.eval(x)).collect();
        let kernel = (f.q() as u64).pow(g.kernel_dimension());
        prop_assert_eq!(image.len() as u64 * kernel, f.order() as u64);
    }

    #[test]
    fn composition_is_associative((i, a) in coeffs(), b in any::<[u32; 6]>(), c in any::<[u32; 6]>()) {
        let f = ctx(i);
        let n = f.n() as usize;
        let (a, b, c) = (poly(&f, &a), poly(&f, &b[..n]), poly(&f, &c[..n]));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism(i in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), s in 0i64..6) {
        let f = ctx(i);
        let (x, y) = (Gf(a % f.order()), Gf(b % f.order()));
        prop_assert_eq!(f.frobenius(f.mul(x, y), s), f.mul(f.frobenius(x, s), f.frobenius(y, s)));
        prop_assert_eq!(f.frobenius(f.add(x, y), s), f.add(f.frobenius(x, s), f.frobenius(y, s)));
        prop_assert_eq!(f.pow_p(f.mul(x, y), s as u32), f.mul(f.pow_p(x, s as u32), f.pow_p(y, s as u32)));
    }

    #[test]
    fn linear_set_identities((i, raw) in coeffs()) {
        let f = ctx(i);
        let g = poly(&f, &raw);
        let prof = build_linear_set(&g);
        prop_assert!(prof.identities().all());
        if g.field_of_linearity() == 1 {
            prop_assert!(image_size(&g).is_ok());
        }
    }

    #[test]
    fn spectra_double_count_and_enumerators_total((i, raw) in coeffs()) {
        let f = ctx(i);
        let g = poly(&f, &raw);
        let q = f.order() as u64;
        for kind in [Kind::B, Kind::C] {
            let set = build_pointset(&g, kind);
            let spec = line_spectrum(&set);
            prop_assert_eq!(spec.total_lines(), q * q + q + 1);
            prop_assert_eq!(spec.incidence_total(), set.len() * (q + 1));
            match ProjectiveSystem::from_pointset(&set) {
                Ok(_) => {
                    let e = enumerator_from_spectrum(&spec, set.len(), q);
                    prop_assert_eq!(e.a.get(&0).copied(), Some(1));
                    prop_assert_eq!(e.total(), q.pow(3));
                }
                Err(_) => prop_assert_eq!(spec.max_size(), set.len()),
            }
        }
    }

    #[test]
    fn random_semilinear_images_are_found(
        (i, raw) in coeffs(),
        m in any::<[u32; 4]>(),
        e in 0u32..4,
        linear in any::<bool>(),
    ) {
        let f = ctx(i);
        let g = poly(&f, &raw);
        let e = if linear { 0 } else { e % (f.h() * f.n()) };
        let phi = SemilinearMap { matrix: [[Gf(m[0] % f.order()), Gf(m[1] % f.order())], [Gf(m[2] % f.order()), Gf(m[3] % f.order())]], automorphism: e };
        prop_assume!(!phi.det(&f).is_zero());
        let h = phi.graph_image(&g);
        prop_assume!(h.is_some());
        let h = h.unwrap();
        prop_assert!(phi.maps_graph(&g, &h));
        let r = gamma_l_equivalent(&g, &h, linear, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Equivalent);
        let w = r.witness.unwrap();
        prop_assert!(w.maps_graph(&g, &h));
        prop_assert!(w.inverse(&f).maps_graph(&h, &g));
        prop_assert!(w.then(&w.inverse(&f), &f).maps_graph(&g, &g));
        prop_assert!(phi.then(&w.inverse(&f), &f).maps_graph(&g, &g));
    }
}
