#![allow(clippy::int_plus_one)] // the mode inequalities are written as they read

use proptest::prelude::*;
use wlplab::{
    closed_form, indpoly_enum, indpoly_rec, mode_formula, parse_spec, unimodality_report,
    ClosedForm, Graph, IntPolynomial, ModeFamily,
};

fn poly(c: &[u64]) -> IntPolynomial {
    IntPolynomial::from_u64s(c)
}

fn rec(spec: &str) -> IntPolynomial {
    indpoly_rec(&parse_spec(spec).unwrap())
}

fn t_times(p: &IntPolynomial) -> IntPolynomial {
    p.shift(1)
}

#[test]
fn documented_values() {
    assert_eq!(
        indpoly_enum(&parse_spec("empty:3").unwrap()),
        poly(&[1, 3, 3, 1])
    );
    assert_eq!(
        indpoly_enum(&parse_spec("complete:4").unwrap()),
        poly(&[1, 4])
    );
    assert_eq!(
        indpoly_enum(&parse_spec("path:3").unwrap()),
        poly(&[1, 3, 1])
    );
    assert_eq!(rec("cycle:6"), poly(&[1, 6, 9, 2]));
    assert_eq!(rec("path:6"), poly(&[1, 6, 10, 4]));
    assert_eq!(rec("union(complete:2,complete:2)"), poly(&[1, 4, 4]));
    assert_eq!(closed_form(ClosedForm::Ce(6)).unwrap(), poly(&[1, 6, 8, 1]));
    assert_eq!(
        closed_form(ClosedForm::Pan(6)).unwrap(),
        poly(&[1, 7, 14, 8, 1])
    );
    let p6 = closed_form(ClosedForm::Path(6)).unwrap();
    assert_eq!(p6.to_string(), "1 + 6t + 10t^2 + 4t^3");
    assert_eq!(p6.eval(1), 21u32.into());
    assert_eq!(indpoly_rec(&Graph::empty(0)), IntPolynomial::one());
}

#[test]
fn unimodality_examples() {
    let r = unimodality_report(&poly(&[1, 2, 2, 1]));
    assert!(r.is_unimodal);
    assert_eq!(r.mode, Some(1));
    let r = unimodality_report(&poly(&[1, 2, 1, 2]));
    assert!(!r.is_unimodal);
    assert_eq!(r.mode, None);
}

#[test]
fn json_is_decimal_strings() {
    let p = closed_form(ClosedForm::Bk { m: 40, n: 60 }).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    assert!(text.starts_with("[\"1\",\"100\","));
    let back: IntPolynomial = serde_json::from_str(&text).unwrap();
    assert_eq!(back, p);
}

#[test]
fn oracle_recurrence_and_closed_forms_agree() {
    let check = |spec: String, form: Option<ClosedForm>| {
        let g = parse_spec(&spec).unwrap();
        let oracle = indpoly_enum(&g);
        assert_eq!(indpoly_rec(&g), oracle, "{spec}");
        assert_eq!(oracle.coeff(0), 1u32.into());
        if let Some(form) = form {
            assert_eq!(closed_form(form).unwrap(), oracle, "{spec}");
        }
    };
    for n in 1..=18 {
        check(format!("path:{n}"), Some(ClosedForm::Path(n)));
        check(format!("tadpole:3,{}", n.min(15)), None);
        check(format!("complete:{n}"), None);
        check(format!("empty:{n}"), None);
        if n >= 3 {
            check(format!("cycle:{n}"), Some(ClosedForm::Cycle(n)));
            check(format!("pan:{n}"), Some(ClosedForm::Pan(n)));
        }
        if n >= 4 {
            check(format!("ce:{n}"), Some(ClosedForm::Ce(n)));
        }
    }
    for n in 2..=7 {
        for m in 1..n {
            check(format!("bk:{m},{n}"), Some(ClosedForm::Bk { m, n }));
        }
    }
}

#[test]
fn decomposition_identities() {
    let p = |n: usize| rec(&format!("path:{n}"));
    for n in 3..=60 {
        assert_eq!(p(n), &p(n - 1) + &t_times(&p(n - 2)), "path {n}");
        assert_eq!(
            rec(&format!("pan:{n}")),
            &rec(&format!("cycle:{n}")) + &t_times(&p(n - 1)),
            "pan {n}"
        );
    }
    for n in 5..=60 {
        assert_eq!(
            rec(&format!("cycle:{n}")),
            &p(n - 1) + &t_times(&p(n - 3)),
            "cycle {n}"
        );
        assert_eq!(
            rec(&format!("ce:{n}")),
            &p(n - 1) + &t_times(&p(n - 4)),
            "ce {n}"
        );
    }
    for n in 1..=40 {
        assert_eq!(
            rec(&format!("tadpole:3,{n}")),
            rec(&format!("cycle:{}", n + 3))
        );
    }
}

/// Modes from an independent recurrence on path polynomials.
fn path_modes(max: usize) -> Vec<usize> {
    let mut polys = vec![IntPolynomial::one(), IntPolynomial::one_plus_t()];
    while polys.len() <= max {
        let k = polys.len();
        let next = &polys[k - 1] + &t_times(&polys[k - 2]);
        polys.push(next);
    }
    polys
        .iter()
        .map(|p| unimodality_report(p).mode.unwrap())
        .collect()
}

#[test]
fn mode_formulas_match_computed_modes() {
    let modes = path_modes(520);
    for n in 1..=520 {
        assert_eq!(
            mode_formula(ModeFamily::Path, n).unwrap(),
            modes[n],
            "lambda {n}"
        );
    }
    for n in 3..=300 {
        let computed = unimodality_report(&closed_form(ClosedForm::Cycle(n)).unwrap()).mode;
        assert_eq!(
            Some(mode_formula(ModeFamily::Cycle, n).unwrap()),
            computed,
            "rho {n}"
        );
    }
}

#[test]
fn mode_lemmas() {
    let lambda = |n: usize| mode_formula(ModeFamily::Path, n).unwrap();
    let rho = |n: usize| mode_formula(ModeFamily::Cycle, n).unwrap();
    let mode = |f| unimodality_report(&closed_form(f).unwrap()).mode.unwrap();
    let chi = |n| mode(ClosedForm::Ce(n));
    let zeta = |n| mode(ClosedForm::Pan(n));
    for n in 1..=500 {
        assert!(lambda(n + 1) >= lambda(n));
        assert!(
            lambda(n + 3) - 1 <= lambda(n) && lambda(n) <= lambda(n + 4) - 1,
            "{n}"
        );
        assert!(lambda(n + 11) >= lambda(n) + 3, "{n}");
        if n >= 5 {
            assert!(lambda(n - 1) <= rho(n), "{n}");
            assert!(rho(n) <= lambda(n - 4) + 1, "{n}");
            assert!(lambda(n - 4) + 1 <= lambda(n), "{n}");
            let c = chi(n);
            assert!(lambda(n - 1) <= c && c <= lambda(n - 4) + 1, "{n}");
            let (c1, z) = (chi(n + 1), zeta(n));
            assert!(c1 <= z && z <= rho(n) + 1, "{n}");
            assert!(rho(n) <= lambda(n) && lambda(n) <= c1, "{n}");
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut it = bits.into_iter();
                let mut edges = Vec::new();
                for u in 1..=n {
                    for v in u + 1..=n {
                        if it.next().unwrap() {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn recurrence_matches_enumeration(g in arb_graph(16)) {
        let p = indpoly_enum(&g);
        prop_assert_eq!(indpoly_rec(&g), p.clone());
        prop_assert_eq!(p.eval(1) <= (1u64 << g.n()).into(), true);
    }

    #[test]
    fn closed_neighborhood_recurrence(g in arb_graph(14), pick in 0usize..14) {
        prop_assume!(g.n() > 0);
        let w = pick % g.n() + 1;
        let lhs = indpoly_enum(&g);
        let rhs = &indpoly_enum(&g.delete_vertex(w).unwrap())
            + &t_times(&indpoly_enum(&g.delete_closed_neighborhood(w).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn product_rule(a in arb_graph(12), b in arb_graph(12)) {
        let union = a.disjoint_union(&b);
        prop_assert_eq!(indpoly_rec(&union), &indpoly_enum(&a) * &indpoly_enum(&b));
    }
}
