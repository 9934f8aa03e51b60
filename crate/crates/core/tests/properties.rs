use proptest::prelude::*;

use fqcoh::cochain::{u_from_x, x_from_u};
use fqcoh::cohomology::is_coboundary;
use fqcoh::generators::basis_candidates;
use fqcoh::linalg::rank_streaming;
use fqcoh::{delta_pointwise, delta_poly, AlexanderFQuandle, Elem, FieldSpec, GFqMatrix, UCochain};

const ORDERS: [u32; 5] = [3, 4, 8, 9, 16];

fn field(i: usize) -> FieldSpec {
    FieldSpec::with_order(ORDERS[i % ORDERS.len()]).expect("built-in field")
}

fn elem(f: &FieldSpec, i: usize) -> Elem {
    f.element(i % f.order()).unwrap()
}

fn nonzero(f: &FieldSpec, i: usize) -> Elem {
    f.element(1 + i % (f.order() - 1)).unwrap()
}

/// Any `ω ∉ {0, 1}` and `β ≠ 0`.
fn quandle(f: &FieldSpec, w: usize, b: usize) -> AlexanderFQuandle {
    let omega = f.element(2 + w % (f.order() - 2)).unwrap();
    AlexanderFQuandle::new(f, omega, nonzero(f, b)).expect("valid parameters")
}

/// Quandle cochain (no constant term) of the given arity with up to eight terms.
fn cochain(f: &FieldSpec, arity: usize, seeds: &[(u64, usize)]) -> UCochain {
    let q = f.q() as u64;
    let terms = seeds.iter().map(|&(code, c)| {
        let exps: Vec<u64> = (0..arity).map(|i| (code / q.pow(i as u32)) % q).collect();
        (exps, nonzero(f, c))
    });
    let mut phi = UCochain::zero(f, arity);
    for (exps, c) in terms {
        if exps.iter().all(|&e| e == 0) {
            continue;
        }
        phi = phi
            .add(&UCochain::monomial(f, arity, &exps, c).unwrap())
            .unwrap();
    }
    phi
}

fn matrix(f: &FieldSpec, rows: usize, cols: usize, seed: &[usize]) -> GFqMatrix {
    let data = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| elem(f, seed[(r * cols + c) % seed.len()] + r * 7 + c))
                .collect()
        })
        .collect();
    GFqMatrix::from_rows(f, cols, data).unwrap()
}

fn small_field() -> impl Strategy<Value = usize> {
    0..4usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0..5usize, a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let f = field(fi);
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
    }

    #[test]
    fn quandle_axioms_hold(fi in 0..5usize, w in any::<usize>(), b in any::<usize>(),
                           x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let f = field(fi);
        let qd = quandle(&f, w, b);
        let (x, y, z) = (elem(&f, x), elem(&f, y), elem(&f, z));
        prop_assert_eq!(qd.star(x, x), qd.f_map(x));
        prop_assert_eq!(qd.star(qd.star(x, y), qd.f_map(z)), qd.star(qd.star(x, z), qd.star(y, z)));
        prop_assert_eq!(qd.f_map(qd.star(x, y)), qd.star(qd.f_map(x), qd.f_map(y)));
        let s = qd.solve_left(x, y);
        prop_assert_eq!(qd.star(s, y), qd.f_map(x));
    }

    #[test]
    fn u_and_x_coordinates_are_inverse(fi in 0..5usize, n in 1..5usize, seed in prop::collection::vec(any::<usize>(), 4)) {
        let f = field(fi);
        let x: Vec<Elem> = seed[..n].iter().map(|&s| elem(&f, s)).collect();
        let u = u_from_x(&f, &x, n).unwrap();
        prop_assert_eq!(x_from_u(&f, &u, n).unwrap(), x);
    }

    #[test]
    fn interpolation_inverts_value_table(fi in small_field(), arity in 1..3usize,
                                         seeds in prop::collection::vec((any::<u64>(), any::<usize>()), 0..8)) {
        let f = field(fi);
        let phi = cochain(&f, arity, &seeds);
        let back = UCochain::interpolate(&f, arity, &phi.value_table()).unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn product_is_pointwise(fi in small_field(), a in prop::collection::vec((any::<u64>(), any::<usize>()), 0..5),
                            b in prop::collection::vec((any::<u64>(), any::<usize>()), 0..5)) {
        let f = field(fi);
        let (phi, psi) = (cochain(&f, 2, &a), cochain(&f, 2, &b));
        let prod = phi.mul(&psi).unwrap();
        let expected: Vec<Elem> = phi.value_table().iter().zip(psi.value_table())
            .map(|(&x, y)| f.mul(x, y)).collect();
        prop_assert_eq!(prod.value_table(), expected);
    }

    #[test]
    fn delta_squares_to_zero(fi in small_field(), w in any::<usize>(), b in any::<usize>(), arity in 1..3usize,
                             seeds in prop::collection::vec((any::<u64>(), any::<usize>()), 1..6)) {
        let f = field(fi);
        let qd = quandle(&f, w, b);
        let phi = cochain(&f, arity, &seeds);
        let d = delta_poly(&qd, &phi).unwrap();
        prop_assert!(delta_poly(&qd, &d).unwrap().is_zero());
    }

    #[test]
    fn delta_forms_agree(fi in small_field(), w in any::<usize>(), b in any::<usize>(), arity in 1..3usize,
                         seeds in prop::collection::vec((any::<u64>(), any::<usize>()), 1..6)) {
        let f = field(fi);
        let qd = quandle(&f, w, b);
        let phi = cochain(&f, arity, &seeds);
        prop_assert_eq!(delta_poly(&qd, &phi).unwrap(), delta_pointwise(&qd, &phi).unwrap());
    }

    #[test]
    fn coboundaries_have_witnesses(fi in small_field(), w in any::<usize>(), b in any::<usize>(),
                                   seeds in prop::collection::vec((any::<u64>(), any::<usize>()), 1..6)) {
        let f = field(fi);
        let qd = quandle(&f, w, b);
        let rho = cochain(&f, 2, &seeds);
        let d = delta_poly(&qd, &rho).unwrap();
        let witness = is_coboundary(&qd, &d).unwrap();
        prop_assert!(witness.is_some());
        prop_assert_eq!(delta_poly(&qd, &witness.unwrap()).unwrap(), d);
    }

    #[test]
    fn rank_is_transpose_invariant(fi in 0..5usize, rows in 1..24usize, cols in 1..24usize,
                                   seed in prop::collection::vec(any::<usize>(), 1..64)) {
        let f = field(fi);
        let m = matrix(&f, rows, cols, &seed);
        let r = m.rank_generic();
        prop_assert_eq!(m.transpose().rank_generic(), r);
        prop_assert_eq!(m.rank(), r);
        prop_assert!(r <= rows.min(cols));
        let streamed = rank_streaming(&f, (0..rows).map(|i| m.row(i).to_vec()), cols).unwrap();
        prop_assert_eq!(streamed, r);
    }

    #[test]
    fn bitsliced_rank_matches_generic(m_exp in 1..5u32, rows in 1..80usize, cols in 1..80usize,
                                      seed in prop::collection::vec(any::<usize>(), 1..200)) {
        let f = FieldSpec::with_order(1 << m_exp).unwrap();
        let m = matrix(&f, rows, cols, &seed);
        prop_assert_eq!(m.rank_bitsliced(), m.rank_generic());
    }

    #[test]
    fn solve_returns_solutions(fi in 0..5usize, rows in 1..16usize, cols in 1..16usize,
                               seed in prop::collection::vec(any::<usize>(), 1..64),
                               xs in prop::collection::vec(any::<usize>(), 16)) {
        let f = field(fi);
        let m = matrix(&f, rows, cols, &seed);
        let x: Vec<Elem> = xs[..cols].iter().map(|&s| elem(&f, s)).collect();
        let b = m.mul_vec(&x).unwrap();
        let sol = m.solve(&b).unwrap();
        prop_assert!(sol.is_some());
        prop_assert_eq!(m.mul_vec(&sol.unwrap()).unwrap(), b);
        for k in m.kernel_basis() {
            prop_assert!(m.mul_vec(&k).unwrap().iter().all(|e| e.is_zero()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn basis_candidates_are_cocycles(fi in small_field(), w in any::<usize>(), b in any::<usize>(), n in 2..4usize) {
        let f = field(fi);
        let qd = quandle(&f, w, b);
        for c in basis_candidates(&qd, n) {
            prop_assert!(delta_poly(&qd, &c.cochain).unwrap().is_zero(), "{}", c.label);
        }
    }
}
