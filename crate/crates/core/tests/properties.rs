use conekit::gen;
use conekit::geometry::{
    is_in_lsp, kth_order_tangent, limiting_at_origin, limiting_normal_cone, limiting_via_tangent_cells,
    lsp_under_approx, regular_normal_cone, UnionCone,
};
use conekit::kernel::lp;
use conekit::kernel::polyhedron::tangent_cone_convex;
use conekit::kernel::rational::{self, dot};
use conekit::mpec::{
    check_multiplier_constancy, directional_multipliers, graph_normal_regular, graph_tangent_membership,
    graph_tangent_pieces, mpec_certificate_search, verify_mpec_certificate, ConstancyStatus, DEFAULT_SAMPLES,
};
use conekit::stationarity::{
    check_b_lin, check_lin_m_k0, check_m, check_s, check_sufficient_s, lin_m_search, lin_tangent_cone, solve_aux_qp,
    verify_certificate, BOutcome, CertificateKind, StationarityCertificate,
};
use conekit::{Constraints, ConvexCone, ConvexPolyhedron, Error, LpResult, Vector, Q};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

/// `z = Σ μ_r r + Σ ν_l l` with `μ ≥ 0`, decided by LP.
fn in_generated_cone(c: &ConvexCone, z: &[Q]) -> bool {
    let gens: Vec<&Vector> = c.rays().iter().chain(c.lineality()).collect();
    let k = gens.len();
    let mut cons = Constraints::new(k);
    for i in 0..c.dim() {
        cons.push_eq(gens.iter().map(|g| g[i].clone()).collect(), z[i].clone());
    }
    for (t, _) in c.rays().iter().enumerate() {
        cons.push_le(rational::neg(&rational::unit(k, t)), Q::zero());
    }
    lp::is_feasible(&cons)
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Feasible points determined uniquely by some `dim` rows taken as equalities.
fn basic_feasible_points(c: &Constraints) -> Vec<Vector> {
    let n = c.dim;
    let rows: Vec<(Vector, Q)> = c.ineqs.iter().chain(c.eqs.iter()).cloned().collect();
    let mut idx = Vec::new();
    subsets(rows.len(), n, 0, &mut Vec::new(), &mut idx);
    idx.into_iter()
        .filter_map(|set| {
            let a: Vec<Vector> = set.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<Q> = set.iter().map(|&i| rows[i].1.clone()).collect();
            match conekit::kernel::matrix::solve_affine(&a, &b, n) {
                Some((x, null)) if null.is_empty() && c.satisfied_by(&x) => Some(x),
                _ => None,
            }
        })
        .collect()
}

fn random_polyhedron(rng: &mut rand_chacha::ChaCha8Rng, dim: usize, k: usize) -> Constraints {
    let mut c = Constraints::new(dim);
    for _ in 0..k {
        c.push_le(gen::vector(rng, dim, 2), q(rng.gen_range(-2..=3)));
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_involution_and_roundtrip(seed in any::<u64>()) {
        let c = gen::cone(&mut gen::rng(seed), 5, 8);
        prop_assert_eq!(c.polar().polar(), c.clone());
        // The polar computed from the other representation.
        let p = ConvexCone::from_generators(c.dim(), c.ineqs(), c.eqs()).unwrap();
        prop_assert_eq!(&p, &c.polar());
        let back = ConvexCone::from_generators(c.dim(), c.rays(), c.lineality()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn membership_consistency(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let c = gen::cone(&mut rng, 4, 6);
        for _ in 0..4 {
            let z = gen::vector(&mut rng, c.dim(), 2);
            prop_assert_eq!(c.contains(&z), in_generated_cone(&c, &z));
        }
    }

    #[test]
    fn face_soundness(seed in any::<u64>()) {
        let c = gen::cone(&mut gen::rng(seed), 4, 6);
        for f in c.faces().unwrap() {
            for (i, a) in c.ineqs().iter().enumerate() {
                let s = dot(a, &f.ri_point);
                if f.active.contains(&i) {
                    prop_assert!(s.is_zero());
                } else {
                    prop_assert!(s.is_negative());
                }
            }
            prop_assert!(c.contains(&f.ri_point));
        }
    }

    #[test]
    fn tangent_cone_matches_small_steps(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let dim = rng.gen_range(1..=3);
        let cons = random_polyhedron(&mut rng, dim, 5);
        let p = ConvexPolyhedron::from_constraints(&cons).unwrap();
        let Some(z) = p.vertices().into_iter().next().or_else(|| lp::feasible_point(&cons)) else {
            return Ok(());
        };
        let t = tangent_cone_convex(&p, &z).unwrap();
        for _ in 0..6 {
            let u = gen::vector(&mut rng, dim, 2);
            // Largest step keeping every inactive row satisfied, halved.
            let mut step = q(1);
            for (a, b) in &cons.ineqs {
                let slack = b - dot(a, &z);
                let rate = dot(a, &u);
                if slack.is_positive() && rate.is_positive() {
                    let s = slack / rate;
                    if s < step {
                        step = s;
                    }
                }
            }
            step /= q(2);
            let moved = rational::axpy(&z, &step, &u);
            prop_assert_eq!(t.contains(&u), p.contains(&moved));
        }
    }

    #[test]
    fn lp_matches_basic_solutions(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let dim = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=8);
        let cons = random_polyhedron(&mut rng, dim, k);
        let obj = gen::vector(&mut rng, dim, 3);
        let p = ConvexPolyhedron::from_constraints(&cons).unwrap();
        let mut boxed = cons.clone();
        for i in 0..dim {
            boxed.push_le(rational::unit(dim, i), q(1000));
            boxed.push_le(rational::neg(&rational::unit(dim, i)), q(1000));
        }
        let points = basic_feasible_points(&boxed);
        let box_max = points.iter().map(|x| dot(&obj, x)).max();
        match p.lp_optimize(&obj).unwrap() {
            LpResult::Infeasible => prop_assert!(points.is_empty()),
            LpResult::Optimal { value, point, .. } => {
                prop_assert!(cons.satisfied_by(&point));
                prop_assert_eq!(dot(&obj, &point), value.clone());
                prop_assert_eq!(box_max, Some(value));
            }
            LpResult::Unbounded { direction } => {
                prop_assert!(!points.is_empty());
                prop_assert!(dot(&obj, &direction).is_positive());
                prop_assert!(p.recession_cone().contains(&direction));
            }
        }
    }

    #[test]
    fn tangent_cells_and_regular_inclusion(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let t = gen::union_cone(&mut rng, 3, 3);
        let lim = limiting_at_origin(&t).unwrap();
        prop_assert_eq!(limiting_via_tangent_cells(&t).unwrap(), lim.clone());
        let reg = t.regular_normal(&rational::zeros(t.dim())).unwrap();
        prop_assert!(lim.pieces().iter().any(|p| reg.is_subset_of(p)));
        prop_assert_eq!(t.tangent_cone(&rational::zeros(t.dim())).unwrap(), t);
    }

    #[test]
    fn convex_limiting_is_regular(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let (s, z) = gen::union_set(&mut rng, 3, 1);
        let lim = limiting_normal_cone(&s, &z).unwrap();
        let reg = regular_normal_cone(&s, &z).unwrap();
        prop_assert_eq!(lim, UnionCone::single(reg));
    }

    #[test]
    fn lineality_inclusion(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let c = gen::union_cone(&mut rng, 3, 3);
        let z = gen::member_point(&mut rng, &c);
        let t = c.tangent_cone(&z).unwrap();
        for b in lsp_under_approx(&c).unwrap().basis() {
            prop_assert!(is_in_lsp(&t, b).unwrap());
        }
        prop_assert!(is_in_lsp(&t, &z).unwrap());
    }

    #[test]
    fn kth_order_tangent_stabilizes(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let (s, z) = gen::union_set(&mut rng, 3, 3);
        let t = s.tangent_cone(&z).unwrap();
        let v = gen::member_point(&mut rng, &t);
        let mut dirs = vec![v.clone()];
        let mut prev = kth_order_tangent(&s, &z, &dirs).unwrap();
        let mut stable = false;
        for _ in 0..=s.dim() {
            dirs.push(v.clone());
            let next = kth_order_tangent(&s, &z, &dirs).unwrap();
            if next == prev {
                stable = true;
                break;
            }
            prev = next;
        }
        prop_assert!(stable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stationarity_properties(seed in any::<u64>()) {
        let prob = gen::linearized_problem(&mut gen::rng(seed), 3, 3, 3);
        // Jᵀ N̂_D ⊆ (T^lin)°.
        let reg = prob.tangent_d().regular_normal(&rational::zeros(prob.dim_s())).unwrap();
        let tlin = lin_tangent_cone(&prob).unwrap();
        for g in reg.generators() {
            let jg = prob.jac.apply_transpose(&g);
            for piece in tlin.pieces() {
                prop_assert!(piece.polar().contains(&jg));
            }
        }
        if check_b_lin(&prob).unwrap() != BOutcome::Stationary {
            return Ok(());
        }
        let s = check_s(&prob).unwrap();
        let k0 = check_lin_m_k0(&prob).unwrap();
        let m = check_m(&prob).unwrap();
        if s.is_some() {
            prop_assert!(k0.is_some());
        }
        if k0.is_some() {
            prop_assert!(m.is_some());
        }
        if check_sufficient_s(&prob).unwrap() {
            prop_assert!(s.is_some());
        }
        let cert = lin_m_search(&prob).unwrap();
        prop_assert_eq!(cert.k, 0);
        prop_assert!(verify_certificate(&prob, &cert).unwrap().ok);
        prop_assert_eq!(lin_m_search(&prob).unwrap(), cert);
        let qp = solve_aux_qp(&prob).unwrap();
        let c = StationarityCertificate::simple(CertificateKind::LinMK0, &prob, qp.w(&prob), qp.w_star.clone());
        let v = verify_certificate(&prob, &c).unwrap();
        prop_assert!(v.ok, "{:?}", v);
    }

    #[test]
    fn mpec_properties(seed in any::<u64>()) {
        let inst = gen::mpec_instance(&mut gen::rng(seed));
        // An unbounded directional LP means the declared lower-level MSCQ is
        // inconsistent with the data; such instances are out of scope.
        let cond = match check_multiplier_constancy(&inst, DEFAULT_SAMPLES) {
            Err(Error::UnboundedMultiplierLp) => return Ok(()),
            c => c.unwrap(),
        };
        let k = conekit::mpec::critical_cone_gamma(&inst).unwrap();
        for f in k.faces().unwrap() {
            let v = f.ri_point.clone();
            let a = match directional_multipliers(&inst, &v) {
                Err(Error::UnboundedMultiplierLp) => return Ok(()),
                a => a.unwrap(),
            };
            for t in [q(2), Q::new(1.into(), 3.into())] {
                prop_assert_eq!(&directional_multipliers(&inst, &rational::scale(&t, &v)).unwrap(), &a);
            }
        }
        let Some(lambda) = cond.lambda_tilde() else {
            return Ok(());
        };
        if let Some(cert) = mpec_certificate_search(&inst, DEFAULT_SAMPLES).unwrap() {
            prop_assert!(verify_mpec_certificate(&inst, &cert).unwrap().ok);
        }
        if matches!(cond.status(), ConstancyStatus::SampledOk { .. }) {
            return Ok(());
        }
        let m = inst.m;
        let t = graph_tangent_pieces(&inst, &lambda, &cond).unwrap();
        for piece in t.pieces() {
            for f in piece.faces().unwrap() {
                let p = &f.ri_point;
                prop_assert!(graph_tangent_membership(&inst, &p[..m], &p[m..]).unwrap().is_some());
                let formula = graph_normal_regular(&inst, &lambda, &cond, &p[..m], &p[m..]).unwrap();
                prop_assert_eq!(t.regular_normal(p).unwrap(), formula);
            }
        }
    }
}
