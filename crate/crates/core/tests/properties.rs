mod common;

use common::*;
use germlab::ball::CBall;
use germlab::expr::mpoly::{MPoly, Var};
use germlab::expr::parse::parse;
use germlab::expr::rat::{int, GaussRat};
use germlab::expr::ring::Ring;
use germlab::expr::unipoly::UniPoly;
use germlab::grading::detect_weights;
use germlab::invariants::{compare_hp, hp_coefficients, k_values};
use germlab::localalg::{graded_membership, tf_gens, Membership};
use germlab::polar::branch_roots;
use germlab::roots::{isolate_roots, RootConfig, RootValue};
use proptest::prelude::*;

proptest! {
    #![proptest_config(cases(256))]

    #[test]
    fn ring_laws(p in poly(XYT, 3, 4), q in poly(XYT, 3, 4), r in poly(XYT, 3, 4)) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.mul(&MPoly::one()), p.clone());
    }

    #[test]
    fn leibniz_rule(p in poly(XYT, 4, 4), q in poly(XYT, 4, 4), v in prop::sample::select(vec![Var::X, Var::Y, Var::T])) {
        let lhs = p.mul(&q).derive(v);
        let rhs = p.derive(v).mul(&q).add(&p.mul(&q.derive(v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_morphism(p in poly(XYT, 3, 3), q in poly(XYT, 3, 3), sx in poly(XYT, 2, 2), sy in poly(XYT, 2, 2)) {
        let b = [(Var::X, sx), (Var::Y, sy)];
        prop_assert_eq!(p.mul(&q).substitute(&b), p.substitute(&b).mul(&q.substitute(&b)));
        prop_assert_eq!(p.add(&q).substitute(&b), p.substitute(&b).add(&q.substitute(&b)));
    }

    #[test]
    fn parse_print_round_trip(p in poly(XYZ, 5, 6)) {
        let text = p.to_string();
        prop_assert_eq!(parse(&text).unwrap(), p);
    }

    #[test]
    fn gcd_divides_both(
        a in prop::collection::vec(-6i64..=6, 1..5),
        b in prop::collection::vec(-6i64..=6, 1..5),
        c in prop::collection::vec(-6i64..=6, 1..4),
    ) {
        let mk = |v: &[i64]| UniPoly::new(v.iter().map(|k| int(*k)).collect());
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assume!(!c.is_zero());
        let (p, q) = (a.mul(&c), b.mul(&c));
        let g = p.gcd(&q);
        if p.is_zero() && q.is_zero() {
            prop_assert!(g.is_zero());
        } else {
            prop_assert!(p.div_exact_poly(&g).is_some());
            prop_assert!(q.div_exact_poly(&g).is_some());
            prop_assert!(g.div_exact_poly(&c.monic()).is_some());
        }
    }

    #[test]
    fn weighted_euler_identity((w, d) in weight_system(), coeffs in prop::collection::vec((small_rat(), small_rat()), 12)) {
        let f = weighted(&w, d, &coeffs);
        let mut rhs = MPoly::zero();
        for (v, wi) in w.vars.iter().zip(&w.weights) {
            rhs = rhs.add(&f.derive(*v).mul(&MPoly::var(*v)).scale(&int(*wi as i64)));
        }
        prop_assert_eq!(f.scale(&int(d as i64)), rhs);
    }

    #[test]
    fn detected_weights_are_scale_invariant(
        (w, d) in weight_system(),
        coeffs in prop::collection::vec((small_rat(), small_rat()), 12),
        c in small_rat(),
    ) {
        prop_assume!(!c.is_zero_elem());
        let f = weighted(&w, d, &coeffs);
        prop_assume!(!f.is_zero());
        let a = detect_weights(&f).unwrap();
        let b = detect_weights(&f.scale(&c)).unwrap();
        prop_assert_eq!(&a, &b);
        if let Some(sys) = a.system() {
            prop_assert!(sys.check_homogeneous(&f).is_ok());
        }
    }

    #[test]
    fn membership_certificates_resubstitute(
        (w, d) in weight_system(),
        coeffs in prop::collection::vec((small_rat(), small_rat()), 12),
    ) {
        let f = weighted(&w, d, &coeffs);
        prop_assume!(f.depends_on(Var::T));
        let gens = tf_gens(&f, &w).unwrap();
        let target = f.derive(Var::T);
        if let Membership::Member(cert) = graded_membership(&target, &gens, &w).unwrap() {
            prop_assert!(cert.verify(&gens));
        }
    }
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn root_count_equals_degree(p in root_poly()) {
        let roots = isolate_roots(&p, &RootConfig::default()).unwrap();
        let total: u32 = roots.iter().map(|r| r.multiplicity * r.cluster_size).sum();
        prop_assert_eq!(total as usize, p.degree().unwrap());
    }

    #[test]
    fn root_residuals_are_certified(p in root_poly()) {
        let cfg = RootConfig::default();
        for r in isolate_roots(&p, &cfg).unwrap() {
            match &r.value {
                RootValue::Exact(z) => prop_assert!(r.factor.eval(z).is_zero_elem()),
                RootValue::Ball(b) => {
                    prop_assert!(CBall::eval_poly(r.factor.coeffs(), b).contains_zero());
                    prop_assert!(b.radius() <= &cfg.epsilon);
                }
            }
        }
    }

    #[test]
    fn real_polynomials_have_conjugate_roots(p in real_root_poly()) {
        let cfg = RootConfig::default();
        let roots = isolate_roots(&p, &cfg).unwrap();
        for r in &roots {
            let conj = match &r.value {
                RootValue::Exact(z) => RootValue::Exact(z.conj()),
                RootValue::Ball(b) => RootValue::Ball(CBall::with_radius(&b.center().conj(), b.radius(), b.precision())),
            };
            let partner = roots
                .iter()
                .find(|s| ball_or_exact_equal(&s.value, &conj, cfg.precision))
                .expect("conjugate root present");
            prop_assert_eq!(partner.multiplicity, r.multiplicity);
        }
    }
}

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn k_values_are_scale_invariant(f in plane_family(), t in small_rat(), c in small_rat()) {
        prop_assume!(!c.is_zero_elem());
        let cfg = RootConfig::default();
        let t0 = GaussRat::real(t);
        let w = w21();
        let d = branch_roots(&f, &w, &t0, &cfg).unwrap();
        let g = f.scale(&c);
        let dg = branch_roots(&g, &w, &t0, &cfg).unwrap();
        let (kf, kg) = (k_values(&f, &d, &cfg), k_values(&g, &dg, &cfg));
        prop_assert!(ks_agree(&kf, &kg, cfg.precision));
        if kf.k_common.is_some() && kg.k_common.is_some() {
            prop_assert_eq!(kf.k_common, kg.k_common);
        }
    }

    #[test]
    fn polar_branches_certify_residuals(f in plane_family(), t in small_rat()) {
        let cfg = RootConfig::default();
        let d = branch_roots(&f, &w21(), &GaussRat::real(t), &cfg).unwrap();
        for b in &d.branches {
            prop_assert!(b.residual(&d.p, cfg.precision).contains_zero());
        }
        if !d.degenerate {
            prop_assert_eq!(d.root_count() as usize, d.p.degree().unwrap());
        }
    }

    #[test]
    fn hp_comparison_is_symmetric(f in plane_family(), s in small_rat(), t in small_rat()) {
        let cfg = RootConfig::default();
        let w = w21();
        let (s0, t0) = (GaussRat::real(s), GaussRat::real(t));
        let a = hp_coefficients(&f, &branch_roots(&f, &w, &s0, &cfg).unwrap());
        let b = hp_coefficients(&f, &branch_roots(&f, &w, &t0, &cfg).unwrap());
        prop_assert_eq!(compare_hp(&a, &b, cfg.precision), compare_hp(&b, &a, cfg.precision));
    }
}
