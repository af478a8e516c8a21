use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use atiyah::atiyah::AtiyahSurface;
use atiyah::curve::{CurvePoint, CurveSpec, Divisor, WeierstrassCurve};
use atiyah::fat::{
    certify_class, genericity_check, h0_fat, lambda, sample_point, section_jets, FatPoint, FatSample, LambdaOutcome,
};
use atiyah::field::{make_extension_field, Field, FiniteField, Rationals};
use atiyah::matrix::{bareiss_rank_kernel, gauss_rank_kernel, rank_and_kernel, ExactMatrix};

const MAIN: [&str; 5] = ["0", "0", "0", "-1", "1"];
const CHAR2: [&str; 5] = ["1", "0", "0", "0", "1"];

fn ff(p: u64, k: u32) -> FiniteField {
    make_extension_field(p, k).unwrap()
}

fn curve<F: Field>(f: F, a: [&str; 5]) -> WeierstrassCurve<F> {
    WeierstrassCurve::from_spec(f, &CurveSpec::new(a)).unwrap()
}

fn elem<F: Field>(f: &F, seed: u64) -> F::Elem {
    f.random(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn axioms<F: Field>(f: &F, s: [u64; 3]) -> Result<(), TestCaseError> {
    let [a, b, c] = s.map(|x| elem(f, x));
    prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
    prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
    prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
    prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
    prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
    if !f.is_zero(&a) {
        prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
    } else {
        prop_assert!(f.inv(&a).is_none());
    }
    Ok(())
}

/// Textbook row reduction, kept separate from the library routines.
fn naive_rank<F: Field>(f: &F, m: &ExactMatrix<F::Elem>) -> usize {
    let mut rows = m.row_vecs();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else { continue };
        rows.swap(rank, piv);
        let inv = f.inv(&rows[rank][col]).unwrap();
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !f.is_zero(&row[col]) {
                let factor = f.mul(&row[col], &inv);
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_agrees<F: Field>(f: &F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let sparse = rng.gen_bool(0.5);
        let m = ExactMatrix::from_fn(r, c, |_, _| if sparse && rng.gen_bool(0.6) { f.zero() } else { f.random(&mut rng) });
        let rk = rank_and_kernel(f, &m);
        assert_eq!(rk.rank, naive_rank(f, &m));
        assert_eq!(rk.rank + rk.kernel.len(), c);
        for v in &rk.kernel {
            assert!(m.mul_vec(f, v).iter().all(|x| f.is_zero(x)));
        }
    }
}

#[test]
fn fraction_free_rank_matches_naive() {
    rank_agrees(&Rationals, 1);
    rank_agrees(&ff(2, 1), 2);
    rank_agrees(&ff(3, 2), 3);
    rank_agrees(&ff(5, 2), 4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let m = ExactMatrix::from_fn(4, 5, |_, _| Rationals.random(&mut rng));
        assert_eq!(bareiss_rank_kernel(&m).rank, gauss_rank_kernel(&Rationals, &m).rank);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(s in any::<[u64; 3]>()) {
        axioms(&Rationals, s)?;
        axioms(&ff(2, 1), s)?;
        axioms(&ff(3, 2), s)?;
        axioms(&ff(5, 2), s)?;
    }

    #[test]
    fn group_law_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for c in [curve(ff(3, 2), MAIN), curve(ff(2, 3), CHAR2), curve(ff(5, 2), ["1", "1", "1", "1", "1"])] {
            let [p, q, r] = [0; 3].map(|_| c.random_point(&mut rng));
            prop_assert_eq!(c.add(&c.add(&p, &q), &r), c.add(&p, &c.add(&q, &r)));
            prop_assert!(c.add(&p, &c.neg(&p)).is_infinity());
            let n = c.points().unwrap().len() as i64;
            prop_assert!(c.mul(n, &p).is_infinity());
        }
    }

    #[test]
    fn torsion_certificate_matches_group_law(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ff(3, 2);
        let a = AtiyahSurface::new(curve(f, MAIN), curve(ff(3, 2), MAIN).parse_point("0", "1").unwrap(), None).unwrap();
        let s = sample_point(&a, &mut rng);
        let c = a.curve();
        let p_torsion = c.mul(3, &c.sub(&s.base, a.q())).is_infinity();
        prop_assert_eq!(certify_class(&a, &s.base).is_err(), p_torsion);
    }

    #[test]
    fn principal_divisors_have_degree_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = curve(ff(5, 2), MAIN);
        let pts: Vec<CurvePoint<u64>> = (0..4).map(|_| c.random_point(&mut rng)).filter(|p| !p.is_infinity()).collect();
        prop_assume!(pts.len() >= 2);
        let f = c.pair_function(&pts[0], &pts[1]);
        let mut cands = pts.clone();
        cands.push(c.neg(&c.add(&pts[0], &pts[1])));
        if let Some(d) = c.divisor_over(&f, &cands) {
            prop_assert_eq!(d.degree(), 0);
        }
        let mut d = Divisor::zero();
        d.add_point(pts[0].clone(), 2);
        d.add_point(pts[1].clone(), -1);
        let (h, r) = c.miller_reduce(&d);
        let mut support = pts.clone();
        support.push(r.clone());
        support.push(c.neg(&r));
        let dv = c.divisor_over(&h, &support);
        prop_assert!(dv.is_some());
        let dv = dv.unwrap();
        prop_assert_eq!(dv.degree(), 0);
        let mut want = d.clone();
        want.add_point(CurvePoint::Infinity, -(d.degree() - 1));
        want.add_point(r, -1);
        prop_assert_eq!(dv, want);
    }

    #[test]
    fn riemann_roch_on_small_support(seed in any::<u64>(), deg in 0i64..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = curve(ff(3, 3), MAIN);
        let pts: Vec<CurvePoint<u64>> = (0..5).map(|_| c.random_point(&mut rng)).collect();
        let mut d = Divisor::zero();
        for p in pts.iter().skip(1) {
            d.add_point(p.clone(), rng.gen_range(-2..=2));
        }
        let rest = deg - d.degree();
        d.add_point(pts[0].clone(), rest);
        let space = c.rr_basis(&d).unwrap();
        let want = if deg > 0 { deg as usize } else { usize::from(c.sigma(&d).is_infinity()) };
        prop_assert_eq!(space.dimension(), want);
        prop_assert!(c.verify_rr_space(&space));
    }

    #[test]
    fn expansion_is_a_ring_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ff(5, 1);
        let c = curve(f.clone(), ["0", "0", "0", "1", "1"]);
        let p = c.random_point(&mut rng);
        let pts: Vec<CurvePoint<u64>> = (0..3).map(|_| c.random_point(&mut rng)).collect();
        let g = c.pair_function(&pts[0], &pts[1]).add(&f, &atiyah::curve::FuncElem::monomial(&f, 1, 1));
        let h = c.pair_function(&pts[1], &pts[2]).add(&f, &atiyah::curve::FuncElem::x(&f));
        let prec = 6;
        let (eg, eh) = (c.expand_abs(&g, &p, prec).unwrap(), c.expand_abs(&h, &p, prec).unwrap());
        let prod = c.expand_abs(&g.mul(&c, &h), &p, prec).unwrap();
        let sum = c.expand_abs(&g.add(&f, &h), &p, prec).unwrap();
        let lo = eg.valuation().unwrap_or(0).min(0) + eh.valuation().unwrap_or(0).min(0);
        let top = prec + lo;
        for i in lo..top {
            prop_assert_eq!(prod.coeff(&f, i), eg.mul(&f, &eh).coeff(&f, i));
        }
        for i in lo..prec {
            prop_assert_eq!(sum.coeff(&f, i), eg.add(&f, &eh).coeff(&f, i));
        }
    }

    #[test]
    fn fat_dimension_independent_of_fiber_coordinate(seed in any::<u64>(), l in 1usize..6, m in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ff(5, 2);
        let c = curve(f.clone(), MAIN);
        let a = AtiyahSurface::new(c.clone(), c.parse_point("0", "1").unwrap(), None).unwrap();
        let s = sample_point(&a, &mut rng);
        let other = FatSample { base: s.base.clone(), w0: f.random(&mut rng) };
        prop_assert_eq!(h0_fat(&a, l, &[FatPoint::new(&s, m)]).unwrap(), h0_fat(&a, l, &[FatPoint::new(&other, m)]).unwrap());
    }

    #[test]
    fn fat_dimension_bounds(seed in any::<u64>(), l in 0usize..7, m in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = curve(ff(3, 4), MAIN);
        let a = AtiyahSurface::new(c.clone(), c.parse_point("0", "1").unwrap(), None).unwrap();
        let s = sample_point(&a, &mut rng);
        let h = h0_fat(&a, l, &[FatPoint::new(&s, m)]).unwrap();
        let conditions = m * (m + 1) / 2;
        prop_assert!(h + conditions > l);
        prop_assert!(h <= l + 1);
        prop_assert!(h0_fat(&a, l + 1, &[FatPoint::new(&s, m)]).unwrap() >= h);
        prop_assert!(h0_fat(&a, l, &[FatPoint::new(&s, m + 1)]).unwrap() <= h);
    }
}

#[test]
fn twisted_dimension_over_f25() {
    let c = curve(ff(5, 2), MAIN);
    let a = AtiyahSurface::new(c.clone(), c.parse_point("0", "1").unwrap(), None).unwrap();
    for l in 0..=12 {
        let (dim, secs) = a.h0_fq_le(l).unwrap();
        assert_eq!(dim, l + 1);
        assert!(secs.iter().all(|s| a.validate(s)));
    }
}

#[test]
fn untwisted_jumps_exactly_at_multiples_of_p() {
    for (f, a, label) in [(ff(2, 3), CHAR2, "F8"), (ff(3, 2), MAIN, "F9"), (ff(5, 1), MAIN, "F5")] {
        let c = curve(f, a);
        let q = c.first_point_avoiding(&[]).unwrap();
        let s = AtiyahSurface::new(c, q, None).unwrap();
        let p = s.field().characteristic() as usize;
        let dims: Vec<usize> = (0..=3 * p).map(|n| s.h0_ne_dim(n).unwrap()).collect();
        for n in 1..=3 * p {
            let jump = dims[n] - dims[n - 1];
            assert_eq!(jump, usize::from(n % p == 0), "{label}: n = {n}, dims {dims:?}");
        }
    }
}

#[test]
fn dimensions_do_not_depend_on_chart_point() {
    let f = ff(3, 2);
    let c = curve(f, MAIN);
    let q = c.parse_point("0", "1").unwrap();
    let pts = c.points().unwrap();
    let ts: Vec<&CurvePoint<u64>> = pts.iter().filter(|p| !p.is_infinity() && **p != q).take(3).collect();
    let reference = AtiyahSurface::new(c.clone(), q.clone(), None).unwrap();
    for t in ts {
        let other = AtiyahSurface::new(c.clone(), q.clone(), Some(t.clone())).unwrap();
        for n in 0..=7 {
            assert_eq!(other.h0_ne_dim(n).unwrap(), reference.h0_ne_dim(n).unwrap());
            assert_eq!(other.h0_fq_le_dim(n).unwrap(), reference.h0_fq_le_dim(n).unwrap());
        }
    }
}

#[test]
fn symmetric_transition_is_unipotent() {
    let c = curve(Rationals, MAIN);
    let a = AtiyahSurface::new(c.clone(), c.parse_point("0", "1").unwrap(), None).unwrap();
    for l in 0..6 {
        let m = a.sym_transition(l);
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => assert_eq!(e, &atiyah::curve::FuncElem::one(&Rationals)),
                    std::cmp::Ordering::Greater => assert!(e.is_zero()),
                    std::cmp::Ordering::Less => {}
                }
            }
        }
    }
}

#[test]
fn lambda_steps_bounded_by_p_and_certificates_vanish() {
    for (f, a) in [(ff(2, 6), CHAR2), (ff(3, 4), MAIN)] {
        let c = curve(f, a);
        let q = c.parse_point("0", "1").unwrap();
        let s = AtiyahSurface::new(c, q, None).unwrap();
        let p = s.field().characteristic() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        let sample = sample_point(&s, &mut rng);
        let mut prev = 0;
        for m in 1..=4 {
            let LambdaOutcome::Found(rec) = lambda(&s, m, &sample).unwrap() else { panic!("cap reached") };
            assert!(rec.lambda - prev <= p, "p = {p}: step {} at m = {m}", rec.lambda - prev);
            let jets = section_jets(&s, &rec.certificate, &FatPoint::new(&sample, m)).unwrap();
            assert!(jets.iter().all(|v| s.field().is_zero(v)));
            prev = rec.lambda;
        }
    }
}

#[test]
fn genericity_is_reported() {
    let c = curve(ff(3, 5), MAIN);
    let a = AtiyahSurface::new(c.clone(), c.parse_point("0", "1").unwrap(), None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let samples: Vec<_> = (0..5).map(|_| sample_point(&a, &mut rng)).collect();
    let r = genericity_check(&a, 4, 2, &samples).unwrap();
    assert_eq!(r.values.len(), 5);
    assert!(r.stable, "{r:?}");
}
