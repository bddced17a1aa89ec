use lemniscate::function::{parse_expr, parse_function, Analytic};
use lemniscate::points::PointSet;
use lemniscate::region::RegionSpec;
use lemniscate::taylor::{expand_taylor, h_kernel, h_kernel_interpolated, Method};
use lemniscate::C64;
use proptest::prelude::*;

fn complex(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(x, y)| C64::new(x, y))
}

/// Distinct foci in the unit box, pairwise at least `gap` apart.
fn separated(n: usize, gap: f64) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(complex(1.0), n).prop_filter("foci too close", move |v| {
        v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| (a - b).norm() >= gap))
    })
}

fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("z".to_string()),
        Just("i".to_string()),
        Just("pi".to_string()),
        (1u32..50).prop_map(|k| format!("{}", k as f64 / 8.0)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}+{b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}-{b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})/(3+{b}*{b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.clone().prop_map(|a| format!("exp({a}/4)")),
            inner.clone().prop_map(|a| format!("sin({a})")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printer_round_trips(text in expr_text(), z in complex(1.0)) {
        let e = parse_expr(&text).unwrap();
        let printed = e.to_string();
        let again = parse_expr(&printed).unwrap();
        prop_assert_eq!(&printed, &again.to_string());
        let (a, b) = (e.eval(z), again.eval(z));
        if a.is_finite() {
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn jet_constant_term_is_value(a in complex(2.0), z0 in complex(1.0)) {
        let f = parse_function(&format!("exp(({})*z)*cos(z) + 1/(5-z)", fmt(a))).unwrap();
        let jet = f.jet_eval(z0, 6).unwrap();
        let v = f.value(z0).unwrap();
        prop_assert!((jet.coeffs[0] - v).norm() <= 1e-12 * v.norm().max(1.0));
    }

    #[test]
    fn jet_matches_nearby_values(z0 in complex(1.0), h in complex(1e-2)) {
        let f = parse_function("sin(z)*exp(z)/(4-z) + sqrt(9+z)").unwrap();
        let jet = f.jet_eval(z0, 12).unwrap();
        let taylor = jet.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * h + c);
        let v = f.value(z0 + h).unwrap();
        prop_assert!((taylor - v).norm() <= 1e-12 * v.norm().max(1.0));
    }

    #[test]
    fn product_jet_is_cauchy_product(z0 in complex(1.0)) {
        let (f, g) = (parse_function("exp(z)/(3-z)").unwrap(), parse_function("cos(2*z)+z^3").unwrap());
        let fg = parse_function("(exp(z)/(3-z))*(cos(2*z)+z^3)").unwrap();
        let (a, b, ab) = (f.jet_eval(z0, 8).unwrap(), g.jet_eval(z0, 8).unwrap(), fg.jet_eval(z0, 8).unwrap());
        for k in 0..=8 {
            let conv: C64 = (0..=k).map(|i| a.coeffs[i] * b.coeffs[k - i]).sum();
            prop_assert!((conv - ab.coeffs[k]).norm() <= 1e-11 * conv.norm().max(1.0));
        }
    }

    #[test]
    fn jet_derivative_matches_finite_difference(z0 in complex(1.0)) {
        let f = parse_function("log(3+z)*exp(z/2)").unwrap();
        let d1 = f.jet_eval(z0, 1).unwrap().coeffs[1];
        let h = 1e-5;
        let fd = (f.value(z0 + h).unwrap() - f.value(z0 - h).unwrap()) / (2.0 * h);
        prop_assert!((d1 - fd).norm() <= 1e-7 * d1.norm().max(1.0));
    }

    #[test]
    fn kernel_forms_agree(nodes in separated(4, 0.2), w in complex(2.0), z in complex(1.0)) {
        let a = h_kernel(w, z, &nodes).unwrap();
        let b = h_kernel_interpolated(w, z, &nodes).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn cauchy_and_derivative_agree(shift in complex(0.3), rho in 1.0f64..1.4, theta in 0.0f64..6.3, which in 0usize..4) {
        let base = ["0", "1,-1", "0:2,1:1", "1,-1,i"][which];
        let rot = C64::from_polar(rho, theta);
        let s = PointSet::new(base.parse::<PointSet>().unwrap().foci().iter().map(|&(z, m)| (shift + rot * z, m))).unwrap();
        for text in ["exp(z)", "1/(3-z)", "z^5", "log(1+z/4)"] {
            let f = parse_function(text).unwrap();
            let a = expand_taylor(&f, &s, 7, Method::Cauchy).unwrap();
            let b = expand_taylor(&f, &s, 7, Method::Derivative).unwrap();
            for (x, y) in a.a().as_slice().iter().zip(b.a().as_slice()) {
                prop_assert!((x - y).norm() <= 1e-10 * (1.0 + y.norm()), "{}: {} vs {}", text, x, y);
            }
        }
    }

    #[test]
    fn foci_order_does_not_matter(foci in separated(3, 0.3), z in complex(0.8)) {
        let f = parse_function("1/(4-z) + exp(z)").unwrap();
        let s = PointSet::simple(&foci).unwrap();
        let rev: Vec<C64> = foci.iter().rev().copied().collect();
        let t = PointSet::simple(&rev).unwrap();
        let a = expand_taylor(&f, &s, 4, Method::Cauchy).unwrap();
        let b = expand_taylor(&f, &t, 4, Method::Cauchy).unwrap();
        for n in 0..4 {
            for j in 0..3 {
                prop_assert!((a.a().get(n, j, 0) - b.a().get(n, 2 - j, 0)).norm() < 1e-11);
            }
        }
        prop_assert!((a.eval(z) - b.eval(z)).norm() < 1e-11);
    }

    #[test]
    fn lemniscates_are_nested(foci in separated(2, 0.1), r in 0.05f64..3.0, grow in 1.0f64..2.0, z in complex(2.0)) {
        let s = PointSet::simple(&foci).unwrap();
        let small = RegionSpec::lemniscate_with_radius(&s, r);
        let big = RegionSpec::lemniscate_with_radius(&s, r * grow);
        prop_assert!(!small.contains(z) || big.contains(z));
    }

    #[test]
    fn merged_foci_sum_multiplicities(z in complex(1.0), m in 1u32..4, k in 1u32..4) {
        let s = PointSet::new([(z, m), (z + C64::new(1e-12, 0.0), k), (z + 1.0, 1)]).unwrap();
        prop_assert_eq!(s.len(), 2);
        prop_assert_eq!(s.multiplicity(s.index_of(z).unwrap()), m + k);
    }
}

fn fmt(z: C64) -> String {
    format!("({:?}+({:?})*i)", z.re, z.im)
}
