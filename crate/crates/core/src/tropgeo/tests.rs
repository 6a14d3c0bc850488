use super::*;
use crate::hyperfield::{q, HyperfieldId};
use crate::polyring::parse_poly;
use proptest::prelude::*;

fn t(s: &str) -> HPoly {
    parse_poly(s, HyperfieldId::T).unwrap()
}

fn tr(s: &str) -> HPoly {
    parse_poly(s, HyperfieldId::TR).unwrap()
}

fn line_through(field: HyperfieldId, apex: [i64; 2], signs: [i8; 3]) -> HPoly {
    lift(
        field,
        2,
        &[
            (vec![0, 0], signs[0], q(0)),
            (vec![1, 0], signs[1], q(-apex[0])),
            (vec![0, 1], signs[2], q(-apex[1])),
        ],
    )
    .unwrap()
}

#[test]
fn pf_evaluation_is_min_plus() {
    let f = t("0 + x + y");
    assert_eq!(pf_eval(&f, &[q(3), q(5)]).unwrap(), q(0));
    assert_eq!(pf_eval(&f, &[q(-3), q(5)]).unwrap(), q(-3));
    let g = t("1 + 2x^2");
    assert_eq!(pf_eval(&g, &[q(-1)]).unwrap(), q(0));
}

#[test]
fn subdivision_with_flat_square() {
    let f = t("1 + x + y + x^2 + xy + 1y^2");
    let sd = newton_subdivision(&f).unwrap();
    assert_eq!(sd.cells.len(), 3);
    assert!(sd.is_strictly_convex());
    let sizes: Vec<usize> = sd.cells.iter().map(|c| c.vertices.len()).collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 1);
    let flat = t("0 + 0x + 0y + 0x^2 + 0xy + 0y^2");
    let sd = newton_subdivision(&flat).unwrap();
    assert_eq!(sd.cells.len(), 1);
    assert!(!sd.is_strictly_convex());
}

#[test]
fn essential_monomials_of_generic_quadric() {
    let f = t("0 + x + y + 2x^2 + 1xy + 2y^2");
    assert_eq!(essential_monomials(&f).unwrap().len(), 6);
    let g = t("0 + 5x + 0x^2 + y");
    assert_eq!(essential_monomials(&g).unwrap().len(), 3);
}

#[test]
fn line_curve() {
    let c = tropical_curve(&t("0 + x + y")).unwrap();
    assert_eq!(c.vertices, vec![[q(0), q(0)]]);
    assert_eq!(c.edges.len(), 3);
    let mut dirs: Vec<[i64; 2]> = c.edges.iter().map(|e| e.direction).collect();
    dirs.sort();
    assert_eq!(dirs, vec![[-1, -1], [0, 1], [1, 0]]);
    assert!(c.edges.iter().all(|e| e.weight == 1 && e.end.is_none()));
    assert!(c.is_balanced());
    let shifted = tropical_curve(&t("0 + t^(-2)x + 3y")).unwrap();
    assert_eq!(shifted.vertices, vec![[q(2), q(-3)]]);
}

#[test]
fn curves_are_balanced() {
    for s in [
        "0 + x + y + 1x^3 + 1x^2y + 2y^3",
        "1 + x + y + x^2 + xy + 1y^2",
        "0 + 3x + 1y + 2x^2 + 5xy + 0y^2 + 7x^3 + 2y^3",
    ] {
        let c = tropical_curve(&t(s)).unwrap();
        assert!(c.is_balanced(), "{s}");
    }
}

#[test]
fn initial_form_at_origin() {
    let f = t("0 + x + y + 2x^2 + 1xy + 2y^2");
    let i = initial_form(&f, &[q(0), q(0)]).unwrap();
    assert_eq!(i.field(), HyperfieldId::K);
    let mut s = i.support();
    s.sort();
    assert_eq!(s, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    let g = tr("0 - x + 3y");
    let ig = initial_form(&g, &[q(0), q(0)]).unwrap();
    assert_eq!(ig.field(), HyperfieldId::S);
    assert_eq!(ig.sign_at(&[1, 0]), -1);
    assert_eq!(ig.len(), 2);
}

#[test]
fn curve_sum_doubles_weights() {
    let v = enriched_curve(&tr("0 - x + y")).unwrap();
    let w = curve_sum(&v, &v).unwrap();
    assert_eq!(w.curve.edges.len(), 3);
    assert!(w.curve.edges.iter().all(|e| e.weight == 2));
    assert_eq!(w.label_of(&[1, 1]), Some(-1));
    assert_eq!(w.label_of(&[2, 0]), Some(1));
}

fn gmsl() -> HPoly {
    t("0 + x + y + 1x^3 + 1x^2y + 2y^3")
}

#[test]
fn gmsl_contains_the_line_but_is_not_divisible() {
    let f = gmsl();
    let l = t("0 + x + y");
    let v = enriched_curve(&f).unwrap();
    let g = gmult(&v, &LineFamily::Fixed(vec![l.clone()]), false).unwrap();
    assert_eq!(g.value, 1);
    let r = mult_tropext(&f, &l).unwrap();
    assert_eq!(r.value, Some(0));
    assert_eq!(r.upper, 1);
}

#[test]
fn signed_line_fails_enriched_check() {
    let f = tr("+0 - x + y + 1x^3 + 1x^2y + 2y^3");
    let v = enriched_curve(&f).unwrap();
    let l = tr("0 + x + y");
    let k = gmult(&v, &LineFamily::Fixed(vec![l.clone()]), false).unwrap();
    let s = gmult(&v, &LineFamily::Fixed(vec![l]), true).unwrap();
    assert!(k.value >= s.value);
}

#[test]
fn lines_split_off_products() {
    let l1 = line_through(HyperfieldId::TR, [0, 0], [1, 1, 1]);
    let l2 = line_through(HyperfieldId::TR, [2, -1], [1, -1, 1]);
    let f = tropical_product(&l1, &l2).unwrap();
    let v = enriched_curve(&f).unwrap();
    assert!(v.curve.is_balanced());
    let fam = LineFamily::SignPattern(vec![[1, 1, 1]]);
    assert_eq!(gmult(&v, &fam, false).unwrap().value, 2);
    assert_eq!(gmult(&v, &fam, true).unwrap().value, 1);
    let both = LineFamily::SignPattern(vec![[1, 1, 1], [1, -1, 1]]);
    assert_eq!(gmult(&v, &both, true).unwrap().value, 2);
}

#[test]
fn tr_line_example() {
    let v = enriched_curve(&tr("0 - x + y")).unwrap();
    let l = tr("0 + x + y");
    assert_eq!(gmult(&v, &LineFamily::Fixed(vec![l.clone()]), false).unwrap().value, 1);
    assert_eq!(gmult(&v, &LineFamily::Fixed(vec![l]), true).unwrap().value, 0);
}

#[test]
fn degree_five_lift_splits_two_lines() {
    let apexes: [[i64; 2]; 5] = [[-5, -10], [-19, -13], [-22, -22], [-30, -19], [-40, -5]];
    let mut f = line_through(HyperfieldId::T, apexes[0], [1, 1, 1]);
    for a in &apexes[1..] {
        f = tropical_product(&f, &line_through(HyperfieldId::T, *a, [1, 1, 1])).unwrap();
    }
    let plus = ["0/0", "0/4", "0/5", "1/1", "1/2", "2/1", "2/2", "3/1", "4/0", "5/0"];
    let sign_of = |e: &Exp| {
        let k = format!("{}/{}", e[0], e[1]);
        if plus.contains(&k.as_str()) {
            1
        } else {
            -1
        }
    };
    let terms: Vec<(Exp, i8, Q)> = f
        .terms()
        .map(|(e, c)| (e.clone(), sign_of(e), c.exponent().unwrap().clone()))
        .collect();
    assert_eq!(terms.len(), 21);
    let g = lift(HyperfieldId::TR, 2, &terms).unwrap();
    let v = enriched_curve(&g).unwrap();
    assert!(v.subdivision.is_strictly_convex());
    assert!(v.curve.is_balanced());
    let fam = LineFamily::SignPattern(vec![[1, 1, 1]]);
    assert_eq!(gmult(&v, &fam, false).unwrap().value, 5);
    assert_eq!(gmult(&v, &fam, true).unwrap().value, 2);
}

#[test]
fn initial_form_example_has_multiplicity_zero() {
    let f = t("0 + x + y + 2x^2 + 1xy + 2y^2");
    let l = t("0 + 1x + 1y");
    let r = mult_tropext(&f, &l).unwrap();
    assert_eq!(r.value, Some(0));
}

#[test]
fn double_line_has_multiplicity_two() {
    let l = line_through(HyperfieldId::TR, [1, -2], [1, -1, 1]);
    let f = tropical_product(&l, &l).unwrap();
    let r = mult_tropext(&f, &l).unwrap();
    assert_eq!(r.upper, 2);
    assert_eq!(r.lower, 2);
}

#[test]
fn ext_quotient_recovers_factor() {
    let l = t("0 + x + y");
    let g = t("0 + 2x + 3y + 1x^2");
    let f = tropical_product(&l, &g).unwrap();
    let h = ext_quotient(&f, &l).unwrap().expect("quotient");
    assert!(crate::polyring::product_membership(&f, &l, &h).unwrap());
}

fn s(text: &str) -> HPoly {
    crate::polyring::grid_from_text(text, HyperfieldId::S).unwrap()
}

#[test]
fn pmult_dense_all_plus_quadratic() {
    let f = s("+\n+ +\n+ + +");
    let l = HPoly::from_signs(HyperfieldId::S, 2, [(vec![0, 0], 1), (vec![1, 0], 1), (vec![0, 1], 1)]);
    let r = pmult(&f, &l, PmultOptions::default()).unwrap();
    assert_eq!(r.value, 2);
    assert!(r.exact);
    let m = HPoly::from_signs(HyperfieldId::S, 2, [(vec![0, 0], 1), (vec![1, 0], -1), (vec![0, 1], 1)]);
    assert_eq!(pmult(&f, &m, PmultOptions::default()).unwrap().value, 0);
}

#[test]
fn pmult_relaxed_non_dense() {
    let f = s("-\n0 +\n+ 0 -");
    let l = HPoly::from_signs(HyperfieldId::S, 2, [(vec![0, 0], 1), (vec![1, 0], 1), (vec![0, 1], -1)]);
    let opts = PmultOptions {
        relaxed: true,
        ..PmultOptions::default()
    };
    assert_eq!(pmult(&f, &l, opts).unwrap().value, 0);
    assert!(pmult(&f, &l, PmultOptions::default()).is_err());
}

#[test]
fn pmult_factor_mode_agrees_on_quadratics() {
    let l = HPoly::from_signs(HyperfieldId::S, 2, [(vec![0, 0], 1), (vec![1, 0], 1), (vec![0, 1], 1)]);
    for grid in ["+\n+ +\n+ + +", "+\n- +\n+ - +", "-\n+ +\n+ + -", "+\n+ -\n+ + +"] {
        let f = s(grid);
        let d = pmult(
            &f,
            &l,
            PmultOptions {
                mode: PmultMode::Direct,
                ..PmultOptions::default()
            },
        )
        .unwrap();
        let fc = pmult(
            &f,
            &l,
            PmultOptions {
                mode: PmultMode::Factor,
                height_bound: Some(4),
                ..PmultOptions::default()
            },
        )
        .unwrap();
        assert!(fc.value <= d.value, "{grid}");
        assert_eq!(fc.value, d.value, "{grid}");
    }
}

fn arb_ext(field: HyperfieldId, deg: u32) -> impl Strategy<Value = HPoly> {
    let n = ((deg + 1) * (deg + 2) / 2) as usize;
    prop::collection::vec((-6i64..=6, prop::bool::ANY), n).prop_map(move |cs| {
        let mut terms = Vec::new();
        let mut k = 0;
        for tot in 0..=deg {
            for i in 0..=tot {
                let (h, neg) = cs[k];
                k += 1;
                let sg = if neg && field == HyperfieldId::TR { -1 } else { 1 };
                terms.push((vec![i, tot - i], sg, q(h)));
            }
        }
        lift(field, 2, &terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pf_is_additive(f in arb_ext(HyperfieldId::T, 2), g in arb_ext(HyperfieldId::T, 2),
                      x in -8i64..=8, y in -8i64..=8) {
        let p = tropical_product(&f, &g).unwrap();
        let pt = [q(x), q(y)];
        prop_assert_eq!(pf_eval(&p, &pt).unwrap(),
                        pf_eval(&f, &pt).unwrap() + pf_eval(&g, &pt).unwrap());
    }

    #[test]
    fn initial_forms_respect_products(f in arb_ext(HyperfieldId::TR, 2), g in arb_ext(HyperfieldId::TR, 1),
                                      x in -8i64..=8, y in -8i64..=8) {
        let p = tropical_product(&f, &g).unwrap();
        let w = [q(x), q(y)];
        let ip = initial_form(&p, &w).unwrap();
        let a = initial_form(&f, &w).unwrap();
        let b = initial_form(&g, &w).unwrap();
        prop_assert!(crate::polyring::product_membership(&ip, &a, &b).unwrap());
    }

    #[test]
    fn curves_balance(f in arb_ext(HyperfieldId::T, 3)) {
        let c = tropical_curve(&f).unwrap();
        prop_assert!(c.is_balanced());
    }

    #[test]
    fn tropext_bounded_by_gmult(f in arb_ext(HyperfieldId::TR, 2), s in prop::array::uniform3(prop::bool::ANY),
                                a in -3i64..=3, b in -3i64..=3) {
        let sg = s.map(|n| if n { -1 } else { 1 });
        let l = line_through(HyperfieldId::TR, [a, b], sg);
        let r = mult_tropext(&f, &l).unwrap();
        prop_assert!(r.lower <= r.upper);
        prop_assert!(r.upper <= 2);
        let k = gmult(&enriched_curve(&f).unwrap(), &LineFamily::Fixed(vec![l]), false).unwrap();
        prop_assert!(r.upper <= k.value);
    }

    #[test]
    fn enriched_gap_at_most_one(ls in prop::collection::vec(((-4i64..=4, -4i64..=4), prop::bool::ANY), 1..4)) {
        let mut f: Option<HPoly> = None;
        for ((a, b), neg) in &ls {
            let l = line_through(HyperfieldId::TR, [*a, *b], [1, if *neg { -1 } else { 1 }, 1]);
            f = Some(match f {
                None => l,
                Some(p) => tropical_product(&p, &l).unwrap(),
            });
        }
        let v = enriched_curve(&f.unwrap()).unwrap();
        let fam = LineFamily::SignPattern(vec![[1, 1, 1], [1, -1, 1]]);
        let k = gmult(&v, &fam, false).unwrap().value;
        let e = gmult(&v, &fam, true).unwrap().value;
        prop_assert_eq!(k as usize, ls.len());
        prop_assert!(e <= k);
    }
}

#[test]
fn dense_cubic_has_a_factoring_perturbation() {
    // Heights found by an independent search over line and conic lifts.
    let f = s("-\n- +\n+ - -\n+ + + -");
    let l = HPoly::from_signs(HyperfieldId::S, 2, [(vec![0, 0], 1), (vec![1, 0], 1), (vec![0, 1], 1)]);
    let r = pmult(&f, &l, PmultOptions::default()).unwrap();
    assert_eq!(r.value, 1);
    let line = tr("0 + t^(-3)x + t^(-5)y");
    let conic = tr("0 + t^(-1)x - t^(-4)y - x^2 + t^(-1)xy - y^2");
    let big = tropical_product(&line, &conic).unwrap();
    assert!(newton_subdivision(&big).unwrap().is_strictly_convex());
    assert_eq!(big.apply_morphism(crate::hyperfield::Morphism::Ac).unwrap(), f);
}
