use num_complex::Complex64;
use proptest::prelude::*;
use sepball::conegeo::exact::{rat, to_f64};
use sepball::conegeo::{
    ball_to_cone_param, cone_to_ball_param, ellipsoidal_contains, ellipsoidal_dual, inclusion_radius,
    inclusion_radius_sq_exact, lorentz_contains, EllipsoidalCone,
};
use sepball::matan::{GenMatrix, SymMatrix};
use sepball::qsep::{from_pauli, partial_transpose, psd_margin, to_pauli, QubitState};
use sepball::tensoropt::{apply_triple_map, cone_trilinear_min, injective_norm, Tensor3};

fn vec_of(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, n)
}

fn unit(n: usize) -> impl Strategy<Value = Vec<f64>> {
    vec_of(n).prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3).prop_map(|v| {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / n).collect()
    })
}

fn tensor(dims: [usize; 3]) -> impl Strategy<Value = Tensor3> {
    vec_of(dims.iter().product()).prop_map(move |c| Tensor3::from_vec(dims, c).unwrap())
}

fn any_dims() -> impl Strategy<Value = [usize; 3]> {
    prop::array::uniform3(3usize..=4)
}

fn spd(n: usize) -> impl Strategy<Value = SymMatrix> {
    vec_of(n * n).prop_map(move |d| {
        let g = GenMatrix::from_vec(n, n, d).unwrap();
        SymMatrix::symmetric_part(&g.matmul(&g.transpose())).add(&SymMatrix::scaled_identity(n, 0.2))
    })
}

fn state(m: usize) -> impl Strategy<Value = QubitState> {
    let n = 1usize << m;
    vec_of(2 * n * n).prop_map(move |raw| {
        let h: Vec<Complex64> = (0..n * n)
            .map(|k| {
                let (r, c) = (k / n, k % n);
                let (a, b) = (r.min(c), r.max(c));
                let idx = a * n + b;
                let z = Complex64::new(raw[2 * idx], raw[2 * idx + 1]);
                if r == c { Complex64::new(z.re, 0.0) } else if r < c { z } else { z.conj() }
            })
            .collect();
        QubitState::new(m, h).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radius_conversions_invert(rho in 0.01..0.99f64) {
        let r = ball_to_cone_param(rho).unwrap();
        prop_assert!((cone_to_ball_param(r).unwrap() - rho).abs() < 1e-14);
    }

    #[test]
    fn inclusion_float_matches_exact(n in 2usize..20, m in 2usize..20, p1 in 1i128..30, q1 in 1i128..30, p2 in 1i128..30, q2 in 1i128..30) {
        let exact = inclusion_radius_sq_exact(n, m, rat(p1, q1), rat(p2, q2)).unwrap();
        let r1 = (p1 as f64 / q1 as f64).sqrt();
        let r2 = (p2 as f64 / q2 as f64).sqrt();
        let float = inclusion_radius(n, m, r1, r2).unwrap();
        prop_assert!((float * float - to_f64(&exact)).abs() <= 1e-13 * (1.0 + to_f64(&exact)));
        // Never larger than either factor's radius.
        prop_assert!(float <= r1.min(r2) + 1e-12);
    }

    #[test]
    fn dual_pairs_nonnegatively(p in spd(3), x in vec_of(3), y in vec_of(3)) {
        let k = EllipsoidalCone::new(p).unwrap();
        let kd = ellipsoidal_dual(&k).unwrap();
        // Lift the tails onto the boundaries of K and K*.
        let lift = |c: &EllipsoidalCone, t: &[f64]| {
            let q = c.shape().quad_form(t).sqrt();
            let mut v = vec![q + 1e-12];
            v.extend_from_slice(t);
            v
        };
        let (u, w) = (lift(&k, &x), lift(&kd, &y));
        prop_assert!(ellipsoidal_contains(&k, &u).unwrap().inside);
        prop_assert!(ellipsoidal_contains(&kd, &w).unwrap().inside);
        let dot: f64 = u.iter().zip(&w).map(|(a, b)| a * b).sum();
        prop_assert!(dot >= -1e-9 * (1.0 + u[0] * w[0]));
        let back = ellipsoidal_dual(&kd).unwrap();
        prop_assert!(back.shape().to_general().max_abs_diff(&k.shape().to_general()) < 1e-9 * (1.0 + k.shape().trace()));
    }

    #[test]
    fn lorentz_membership_is_norm_test(x in vec_of(5)) {
        let tail = x[1..].iter().map(|t| t * t).sum::<f64>().sqrt();
        let m = lorentz_contains(&x);
        prop_assert_eq!(m.inside, x[0] >= tail);
        prop_assert!((m.margin - (x[0] - tail)).abs() < 1e-15);
    }

    #[test]
    fn trilinear_is_rank_one_pairing(x in tensor([4, 3, 4]), a in vec_of(4), b in vec_of(3), c in vec_of(4)) {
        let r1 = Tensor3::rank_one(&a, &b, &c).unwrap();
        prop_assert!((x.trilinear(&a, &b, &c) - x.dot(&r1).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn permutations_compose(dims in any_dims(), seed in vec_of(64)) {
        let x = Tensor3::from_fn(dims, |i, j, k| seed[(i * 16 + j * 4 + k) % 64]).unwrap();
        let p = x.permute_axes([1, 2, 0]);
        prop_assert_eq!(p.dims(), [dims[1], dims[2], dims[0]]);
        prop_assert_eq!(p.permute_axes([2, 0, 1]), x.clone());
        prop_assert_eq!(x.permute_axes([1, 0, 2]).permute_axes([1, 0, 2]), x.clone());
        for axis in 0..3 {
            prop_assert_eq!(x.slices(axis).reassemble().unwrap(), x.clone());
        }
    }

    #[test]
    fn injective_norm_bounds(x in tensor([3, 4, 3])) {
        let inj = injective_norm(&x, 16, 1).value;
        let max_entry = x.coords().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(inj >= max_entry - 1e-12);
        prop_assert!(inj <= x.norm() + 1e-12);
    }

    #[test]
    fn rank_one_injective_is_product(a in unit(3), b in unit(4), c in unit(3), s in 0.1..3.0f64) {
        let x = Tensor3::rank_one(&a, &b, &c).unwrap().scale(s);
        prop_assert!((injective_norm(&x, 8, 2).value - s).abs() < 1e-10);
    }

    #[test]
    fn signed_permutation_maps_preserve_norms(x in tensor([3, 3, 3]), perm in Just([2usize, 0, 1]), flip in prop::bool::ANY) {
        let sgn = if flip { -1.0 } else { 1.0 };
        let q = GenMatrix::from_fn(3, 3, |r, c| if perm[r] == c { if r == 0 { sgn } else { 1.0 } } else { 0.0 });
        let y = apply_triple_map(&q, &q, &GenMatrix::identity(3), &x).unwrap();
        prop_assert!((y.norm() - x.norm()).abs() < 1e-12);
        let (ix, iy) = (injective_norm(&x, 32, 3).value, injective_norm(&y, 32, 3).value);
        prop_assert!((ix - iy).abs() < 1e-6 * (1.0 + ix));
    }

    #[test]
    fn cone_min_shifts_exactly(x in tensor([4, 4, 4]), t in -3.0..3.0f64) {
        let base = cone_trilinear_min(&x, 16, 5).unwrap();
        let mut y = x.clone();
        y.set(0, 0, 0, x.get(0, 0, 0) + t);
        let shifted = cone_trilinear_min(&y, 16, 5).unwrap();
        prop_assert!((shifted.value - base.value - t).abs() < 1e-9);
    }

    #[test]
    fn pauli_map_is_isometry(a in state(2), b in state(2)) {
        let (pa, pb) = (to_pauli(&a), to_pauli(&b));
        prop_assert!((pa.norm() - a.frobenius_norm()).abs() < 1e-12);
        let dot: f64 = pa.coords.iter().zip(&pb.coords).map(|(x, y)| x * y).sum();
        prop_assert!((dot - a.inner(&b).unwrap()).abs() < 1e-11);
        let back = from_pauli(&pa);
        let diff = back.entries().iter().zip(a.entries()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-13);
    }

    #[test]
    fn partial_transpose_is_involution(s in state(3), subset in prop::sample::subsequence(vec![1usize, 2, 3], 1..=3)) {
        let t = partial_transpose(&s, &subset).unwrap();
        prop_assert_eq!(partial_transpose(&t, &subset).unwrap(), s.clone());
        prop_assert!((t.trace() - s.trace()).abs() < 1e-12);
        prop_assert!((t.frobenius_norm() - s.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn complementary_transposes_share_spectrum(s in state(3)) {
        let a = psd_margin(&partial_transpose(&s, &[1]).unwrap());
        let b = psd_margin(&partial_transpose(&s, &[2, 3]).unwrap());
        prop_assert!((a - b).abs() < 1e-11);
    }
}
