use super::*;
use crate::hyperfield::q;
use crate::polyring::parse_poly;
use crate::tropgeo::initial_form;
use proptest::prelude::*;

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

fn s_poly(terms: &[(&[u32], i8)]) -> HPoly {
    HPoly::from_signs(HyperfieldId::S, 2, terms.iter().map(|(e, s)| (e.to_vec(), *s)))
}

fn li_wang() -> Vec<HPoly> {
    vec![
        s_poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], -1)]),
        s_poly(&[(&[0, 0], 1), (&[3, 0], 1), (&[0, 3], -1), (&[3, 3], -1)]),
    ]
}

fn tv(field: HyperfieldId, s: i8, e: i64) -> HyperValue {
    HyperValue::unit(field, s, q(e)).unwrap()
}

#[test]
fn two_lines_meet_once() {
    let f = line_through(HyperfieldId::T, [0, 0], [1, 1, 1]);
    let g = line_through(HyperfieldId::T, [3, -2], [1, 1, 1]);
    let pts = transverse_intersections(&[f, g]).unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0].location, [q(3), q(0)]);
    assert_eq!(m_k(&pts[0]).unwrap(), 1);
}

#[test]
fn identical_lines_are_rejected() {
    let f = line_through(HyperfieldId::T, [1, 1], [1, 1, 1]);
    let err = transverse_intersections(&[f.clone(), f]).unwrap_err();
    assert!(matches!(err, Error::InfiniteIntersection(_)));
}

#[test]
fn apex_on_an_edge_is_rejected() {
    let f = line_through(HyperfieldId::T, [0, 0], [1, 1, 1]);
    let g = line_through(HyperfieldId::T, [2, 0], [1, 1, 1]);
    // The apex (2, 0) lies on the horizontal ray of the first line, and
    // the rays overlap.
    assert!(transverse_intersections(&[f.clone(), g]).is_err());
    // The apex (-1, -1) lies on the diagonal ray of the first line.
    let g = line_through(HyperfieldId::T, [-1, -1], [1, 1, 1]);
    assert!(transverse_intersections(&[f.clone(), g]).is_err());
    // The binomial line x + y = 0 passes through the apex.
    let g = parse_poly("0 + 0xy", HyperfieldId::T).unwrap();
    assert!(matches!(
        transverse_intersections(&[f, g]),
        Err(Error::NotTransverse(_))
    ));
}

#[test]
fn binomial_lines_and_determinant() {
    // The curves w1 = w2 and w1 + w2 = 0.
    let f = parse_poly("0x + 0y", HyperfieldId::T).unwrap();
    let g = parse_poly("0 + 0xy", HyperfieldId::T).unwrap();
    let pts = transverse_intersections(&[f, g]).unwrap();
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0].location, [q(0), q(0)]);
    assert_eq!(m_k(&pts[0]).unwrap(), 2);
}

#[test]
fn sign_multiplicity_of_binomials() {
    let f = parse_poly("0x - 0y", HyperfieldId::TR).unwrap();
    let g = parse_poly("0 - 0xy", HyperfieldId::TR).unwrap();
    let pts = transverse_intersections(&[f, g]).unwrap();
    assert_eq!(m_s(&pts[0], &[1, 1]), 1);
    assert_eq!(m_s(&pts[0], &[-1, -1]), 1);
    assert_eq!(m_s(&pts[0], &[1, -1]), 0);
    let h = [tv(HyperfieldId::TR, 1, 0), tv(HyperfieldId::TR, 1, 0)];
    let f = parse_poly("0x + 0y", HyperfieldId::TR).unwrap();
    let g = parse_poly("0 + 0xy", HyperfieldId::TR).unwrap();
    assert_eq!(transverse_case_n(&[f.clone(), g.clone()], &h).unwrap(), 0);
    let h = [tv(HyperfieldId::TR, 1, 0), tv(HyperfieldId::TR, -1, 0)];
    assert_eq!(transverse_case_n(&[f, g], &h).unwrap(), 1);
}

#[test]
fn transverse_case_away_from_the_curves() {
    let f = line_through(HyperfieldId::T, [0, 0], [1, 1, 1]);
    let g = line_through(HyperfieldId::T, [3, -2], [1, 1, 1]);
    let h = [tv(HyperfieldId::T, 1, 1), tv(HyperfieldId::T, 1, 1)];
    assert_eq!(transverse_case_n(&[f.clone(), g.clone()], &h).unwrap(), 0);
    let h = [tv(HyperfieldId::T, 1, 3), tv(HyperfieldId::T, 1, 0)];
    assert_eq!(transverse_case_n(&[f, g], &h).unwrap(), 1);
}

#[test]
fn epsilon_n_li_wang() {
    let r = epsilon_n(&li_wang(), &[1, 1], 8).unwrap();
    assert_eq!(r.value, 2);
    assert_eq!(r.lifts_visited, 17usize.pow(3));
    let w = r.witness.unwrap();
    let pts = transverse_intersections(&w).unwrap();
    assert_eq!(pts.iter().map(|p| m_s(p, &[1, 1])).sum::<u32>(), 2);
}

#[test]
fn epsilon_n_without_sign_changes() {
    let f = s_poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
    let r = epsilon_n(&[f.clone(), f], &[1, 1], 3).unwrap();
    assert_eq!(r.value, 0);
}

#[test]
fn epsilon_n_respects_the_cap() {
    let dense = s_poly(&[
        (&[0, 0], 1),
        (&[1, 0], -1),
        (&[0, 1], 1),
        (&[2, 0], 1),
        (&[1, 1], -1),
        (&[0, 2], 1),
        (&[3, 0], 1),
        (&[0, 3], -1),
    ]);
    let err = epsilon_n(&[dense.clone(), dense], &[1, 1], 8).unwrap_err();
    assert!(matches!(err, Error::CapExceeded { .. }));
}

#[test]
fn li_wang_system_bound() {
    let h = [HyperValue::sign(HyperfieldId::S, 1), HyperValue::sign(HyperfieldId::S, 1)];
    let r = system_bound(&li_wang(), &h).unwrap();
    assert_eq!(r.lower, Some(2));
    assert_eq!(r.upper, Some(3));
    assert_eq!(r.exact, None);
}

#[test]
fn final_example_bound_is_not_tight() {
    let f = s_poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
    let g = s_poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 2], -1)]);
    let h = [HyperValue::sign(HyperfieldId::S, 1), HyperValue::sign(HyperfieldId::S, 1)];
    let r = system_bound(&[f, g], &h).unwrap();
    assert_eq!(r.upper, Some(2));
    assert_eq!(r.exact, Some(0));
    assert!(r.notes.iter().any(|n| n.contains("not tight")));
}

#[test]
fn circle_and_line_over_k() {
    let k = |terms: &[(&[u32], i8)]| {
        HPoly::from_signs(HyperfieldId::K, 2, terms.iter().map(|(e, s)| (e.to_vec(), *s)))
    };
    let circle = k(&[(&[0, 0], 1), (&[2, 0], 1), (&[0, 2], 1)]);
    let line = k(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
    let h = [HyperValue::sign(HyperfieldId::K, 1), HyperValue::sign(HyperfieldId::K, 1)];
    let r = system_bound(&[circle, line], &h).unwrap();
    assert_eq!(r.upper, Some(2));
}

/// Smith normal form oracle for the multiplicity at a transverse point:
/// `d_1 = gcd` of the entries and `d_1 d_2 = |det|`.
fn snf(m: [[i64; 2]; 2]) -> (i64, i64) {
    use num_integer::Integer;
    let d1 = m[0][0].gcd(&m[0][1]).gcd(&m[1][0]).gcd(&m[1][1]);
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
    (d1, if d1 == 0 { 0 } else { det / d1 })
}

/// Real solutions of `x^{m_i} = c_i` in the orthant `h`. Writing
/// `x = h y` with `y > 0`, each equation is solvable iff its right side
/// stays positive, and then uniquely since `det m != 0`.
fn sign_oracle(m: [[i64; 2]; 2], rhs: [i8; 2], h: [i8; 2]) -> u32 {
    let s = |row: [i64; 2], r: i8| -> i8 {
        let mut v = r;
        for (k, hi) in row.iter().zip(h) {
            if k.rem_euclid(2) == 1 {
                v *= hi;
            }
        }
        v
    };
    (s(m[0], rhs[0]) > 0 && s(m[1], rhs[1]) > 0) as u32
}

fn small_exp() -> impl Strategy<Value = [u32; 2]> {
    [0u32..4, 0u32..4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn transverse_case_matches_snf(
        s1 in small_exp(), t1 in small_exp(), s2 in small_exp(), t2 in small_exp(),
        signs in prop::collection::vec(prop::sample::select(vec![-1i8, 1]), 4),
        h in prop::collection::vec(prop::sample::select(vec![-1i8, 1]), 2),
    ) {
        let r1 = [s1[0] as i64 - t1[0] as i64, s1[1] as i64 - t1[1] as i64];
        let r2 = [s2[0] as i64 - t2[0] as i64, s2[1] as i64 - t2[1] as i64];
        prop_assume!(cross(r1, r2) != 0);
        let bin = |s: [u32; 2], t: [u32; 2], a: i8, b: i8| {
            lift(HyperfieldId::TR, 2, &[(s.to_vec(), a, q(0)), (t.to_vec(), b, q(0))]).unwrap()
        };
        let f = bin(s1, t1, signs[0], signs[1]);
        let g = bin(s2, t2, signs[2], signs[3]);
        let pts = transverse_intersections(&[f.clone(), g.clone()]).unwrap();
        prop_assert_eq!(pts.len(), 1);
        prop_assert_eq!(&pts[0].location, &[q(0), q(0)]);
        let (d1, d2) = snf([r1, r2]);
        let ft = f.apply_morphism(crate::hyperfield::Morphism::Nu).unwrap();
        let gt = g.apply_morphism(crate::hyperfield::Morphism::Nu).unwrap();
        let ht = [HyperValue::trop(q(0)), HyperValue::trop(q(0))];
        prop_assert_eq!(transverse_case_n(&[ft, gt], &ht).unwrap() as i64, d1 * d2);
        // x^{s-t} = -c_t / c_s in each equation.
        let rhs = [-signs[0] * signs[1], -signs[2] * signs[3]];
        let hr = [tv(HyperfieldId::TR, h[0], 0), tv(HyperfieldId::TR, h[1], 0)];
        prop_assert_eq!(transverse_case_n(&[f.clone(), g.clone()], &hr).unwrap(), sign_oracle([r1, r2], rhs, [h[0], h[1]]));
        // The initial forms at the point are the binomials themselves.
        prop_assert_eq!(initial_form(&f, &[q(0), q(0)]).unwrap(), f.apply_morphism(crate::hyperfield::Morphism::Ac).unwrap());
        prop_assert!(m_s(&pts[0], &h[..]) <= m_k(&pts[0]).unwrap());
    }

    #[test]
    fn total_multiplicity_is_bezout(
        d1 in 1u32..4, d2 in 1u32..4,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let dense = |d: u32, rng: &mut rand_chacha::ChaCha8Rng| {
            let mut terms = Vec::new();
            for i in 0..=d {
                for j in 0..=d - i {
                    terms.push((vec![i, j], 1i8, q(rng.gen_range(-40..40))));
                }
            }
            lift(HyperfieldId::T, 2, &terms).unwrap()
        };
        let f = dense(d1, &mut rng);
        let g = dense(d2, &mut rng);
        // Translate the second curve by a non-lattice vector.
        let g = lift(HyperfieldId::T, 2, &g.terms().map(|(e, c)| {
            (e.clone(), 1, c.exponent().unwrap() + q(e[0] as i64) / q(7) + q(e[1] as i64) / q(3))
        }).collect::<Vec<_>>()).unwrap();
        if let Ok(pts) = transverse_intersections(&[f, g]) {
            let total: u32 = pts.iter().map(|p| m_k(p).unwrap()).sum();
            prop_assert_eq!(total, d1 * d2);
        }
    }

    #[test]
    fn epsilon_n_below_resultant_bound(
        a in prop::sample::select(vec![-1i8, 1]),
        b in prop::sample::select(vec![-1i8, 1]),
        c in prop::collection::vec(prop::sample::select(vec![-1i8, 1]), 3),
    ) {
        let f = s_poly(&[(&[0, 0], 1), (&[1, 0], a), (&[0, 1], b)]);
        let g = s_poly(&[(&[0, 0], 1), (&[2, 0], c[0]), (&[1, 1], c[1]), (&[0, 2], c[2])]);
        let e = epsilon_n(&[f.clone(), g.clone()], &[1, 1], 3).unwrap();
        let r = crate::resultant::resultant_sign_bound(&[f, g], &[1, 1]).unwrap();
        prop_assert!(e.value <= r);
    }
}
