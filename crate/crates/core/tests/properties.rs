#![allow(clippy::needless_range_loop)]

use hormander_core::kernel::{diff_table, prop3_closed_form};
use hormander_core::maximal::{hl_maximal, orlicz_maximal, sharp_maximal};
use hormander_core::operator::{apply, s_norm};
use hormander_core::young::luxemburg_average;
use hormander_core::*;
use proptest::prelude::*;

fn grid() -> Grid {
    Grid::new(16.0, 512).unwrap()
}

fn samples() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-4.0f64..4.0, 512)
}

fn young() -> impl Strategy<Value = YoungFunction> {
    prop_oneof![
        Just(YoungFunction::Linear),
        (1.0f64..4.0).prop_map(|r| YoungFunction::power(r).unwrap()),
        (1.0f64..3.0, 0.0f64..2.0).prop_map(|(r, b)| YoungFunction::power_log(r, b).unwrap()),
        (0usize..3).prop_map(|k| YoungFunction::exp_log_class(k as u32)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn luxemburg_power_closed_form(v in samples(), r in 1.0f64..4.0, c in -10.0f64..10.0, rad in 0.1f64..5.0) {
        let f = GridFunction::from_samples(grid(), v).unwrap();
        let ball = Interval::new(c, rad).unwrap();
        let lux = luxemburg_average(&f, &ball, &YoungFunction::power(r).unwrap()).unwrap();
        let direct = f.map(|x| x.abs().powf(r)).average(&ball).unwrap().powf(1.0 / r);
        prop_assert!((lux - direct).abs() <= 1e-8 * direct.max(1e-300));
    }

    #[test]
    fn luxemburg_homogeneous_and_monotone(v in samples(), phi in young(), s in 0.1f64..10.0) {
        let f = GridFunction::from_samples(grid(), v).unwrap();
        let ball = Interval::new(1.0, 3.0).unwrap();
        let a = luxemburg_average(&f, &ball, &phi).unwrap();
        let scaled = luxemburg_average(&f.scale(s), &ball, &phi).unwrap();
        prop_assert!((scaled - s * a).abs() <= 1e-9 * (s * a).max(1e-300));
        let bigger = f.map(|x| x.abs() + 0.5);
        prop_assert!(luxemburg_average(&bigger, &ball, &phi).unwrap() >= a * (1.0 - 1e-12));
    }

    #[test]
    fn young_inequality(phi in young(), s in 0.0f64..20.0, t in 0.0f64..20.0) {
        let conj = phi.complementary();
        if !conj.is_degenerate() {
            prop_assert!(s * t <= phi.value(t) + conj.value(s) + 1e-9 * (1.0 + s * t));
        }
    }

    #[test]
    fn seqnorm_monotone_and_subadditive(a in prop::collection::vec(-5.0f64..5.0, 1..8), p in 1.0f64..6.0) {
        for x in [SeqNorm::Lp(p), SeqNorm::orlicz_log(2.0, 1.0).unwrap()] {
            let b: Vec<f64> = a.iter().map(|v| v.abs() * 1.5).collect();
            let na = x.norm_values(a.iter().copied());
            prop_assert!(na <= x.norm_values(b.iter().copied()) * (1.0 + 1e-9));
            let sum: Vec<f64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
            prop_assert!(x.norm_values(sum) <= (na + x.norm_values(b)) * (1.0 + 1e-9));
        }
    }

    #[test]
    fn maximal_dominates_and_orders(v in samples()) {
        let f = GridFunction::from_samples(grid(), v).unwrap();
        let fam = BallFamily::coarse();
        let m = hl_maximal(&f, &fam);
        let m2 = orlicz_maximal(&f, &YoungFunction::power(2.0).unwrap(), &fam);
        let sharp = sharp_maximal(&f, &fam);
        for c in 0..f.samples().len() {
            prop_assert!(m.samples()[c] >= f.samples()[c].abs() * (1.0 - 1e-12));
            prop_assert!(m2.samples()[c] >= m.samples()[c] * (1.0 - 1e-9));
            prop_assert!(sharp.samples()[c] <= 2.0 * m.samples()[c] * (1.0 + 1e-9));
        }
    }

    #[test]
    fn table_agrees_with_direct(i in -6i32..6, dj in 1i32..5, x0 in -50.0f64..50.0, t in -0.999f64..0.999,
                                u in 1.0001f64..1.9999, left in any::<bool>(), dl in -3i32..6) {
        let j = i + dj;
        let x = x0 + t * 2f64.powi(i);
        let y = x0 + if left { -u } else { u } * 2f64.powi(j);
        let l = j + dl;
        let k = DyadicKernel::square(l, l).unwrap();
        let direct = (k.eval_level(l, y - x).unwrap() - k.eval_level(l, y - x0).unwrap()).abs();
        prop_assert_eq!(diff_table(i, j, x, x0, l, y).unwrap(), direct);
    }

    #[test]
    fn dagger_even_and_dilation_covariant(i in -3i32..4, t in 0.05f64..0.24, k in 0u32..3) {
        let phi = YoungFunction::exp_log_class(k);
        let r = 2f64.powi(i);
        let ker = DyadicKernel::square(i - 3, i + 44).unwrap();
        let q = HormanderQuery::new(phi, k, SeqNorm::Lp(2.0), t * r, r, 40, Flavor::Dagger);
        let a = ker.dagger_sum(&q).unwrap().value;
        let mut neg = q.clone();
        neg.x = -q.x;
        prop_assert!((ker.dagger_sum(&neg).unwrap().value - a).abs() <= 1e-12 * a);
        let mut dil = q.clone();
        dil.x *= 2.0;
        dil.r *= 2.0;
        let shifted = ker.with_window(i - 2, i + 45).unwrap();
        prop_assert!((shifted.dagger_sum(&dil).unwrap().value - a).abs() <= 1e-10 * a);
    }

    #[test]
    fn square_operator_translation_and_linearity(v in prop::collection::vec(-1.0f64..1.0, 512), w in prop::collection::vec(-1.0f64..1.0, 512), shift in -40isize..40) {
        let g = grid();
        let mut v = v;
        for (c, x) in v.iter_mut().enumerate() {
            if !(150..362).contains(&c) { *x = 0.0; }
        }
        let f = GridFunction::from_samples(g, v).unwrap();
        let other = GridFunction::from_samples(g, w).unwrap();
        let spec = OperatorSpec::square(-4, 2).unwrap();
        let t = apply(&spec, &f).unwrap();
        let ts = apply(&spec, &f.translate_cells(shift)).unwrap();
        for (l, lv) in ts.levels() {
            let base = t.level(l).unwrap();
            for c in 100..412usize {
                let src = c as isize - shift;
                prop_assert!((lv[c] - base[src as usize]).abs() <= 1e-12);
            }
        }
        let sum = f.zip_with(&other, |a, b| a + b).unwrap();
        let lhs = apply(&spec, &sum).unwrap();
        let rhs = t.zip_with(&apply(&spec, &other).unwrap(), |a, b| a + b).unwrap();
        prop_assert!(lhs.zip_with(&rhs, |a, b| a - b).unwrap().max_abs() <= 1e-12);
    }
}

#[test]
fn closed_form_bound_for_exponential_classes() {
    for k in 0..3u32 {
        let phi = YoungFunction::exp_log_class(k);
        let v = prop3_closed_form(&phi, k, &SeqNorm::Lp(2.0), 200)
            .unwrap()
            .value;
        let bound =
            (1.0 / 2f64.ln()).powi(k as i32 + 1) * (std::f64::consts::PI.powi(2) / 6.0).sqrt();
        assert!(v <= bound, "k={k}: {v} > {bound}");
    }
}

#[test]
fn square_norm_orders_with_sequence_norm() {
    let g = grid();
    let f = grid::Generator::Bump {
        center: 0.0,
        radius: 3.0,
    }
    .sample(g);
    let l2 = OperatorSpec::square(-4, 3).unwrap();
    let linf = l2.with_x_norm(SeqNorm::Lp(f64::INFINITY)).unwrap();
    let a = s_norm(&linf, &f).unwrap();
    let b = s_norm(&l2, &f).unwrap();
    for (x, y) in a.samples().iter().zip(b.samples()) {
        assert!(*x <= *y * (1.0 + 1e-12));
    }
}

#[test]
fn dilation_covariance_of_levels() {
    let fine = Grid::new(16.0, 1024).unwrap();
    let coarse = Grid::new(32.0, 1024).unwrap();
    let f = GridFunction::from_fn(fine, |x| (-(x - 0.7) * (x - 0.7)).exp());
    let fl = GridFunction::from_fn(coarse, |x| (-(x / 2.0 - 0.7) * (x / 2.0 - 0.7)).exp());
    let t = apply(&OperatorSpec::square(-4, 3).unwrap(), &f).unwrap();
    let tl = apply(&OperatorSpec::square(-3, 4).unwrap(), &fl).unwrap();
    for l in -3..=4 {
        let a = tl.level(l).unwrap();
        let b = t.level(l - 1).unwrap();
        for c in 0..1024 {
            assert!((a[c] - b[c]).abs() <= 1e-10, "level {l} cell {c}");
        }
    }
}
