use prequant::algebra::{AlgebraError, Relation};
use prequant::catalog::{Catalog, GroupId};
use prequant::{Element, GeneratorSpec, Presentation, Style, TensorElement};
use proptest::prelude::*;

/// Coefficients of the Poincaré series up to `cap`, as a product of one factor per generator.
fn poincare_counts(pres: &Presentation, cap: u32) -> Vec<usize> {
    let cap = cap as usize;
    let mut series = vec![0usize; cap + 1];
    series[0] = 1;
    for g in pres.generators() {
        let max_exp = match g.relation {
            Relation::Exterior | Relation::SquareLinked { .. } => 1,
            Relation::Truncated { height } => height as usize - 1,
        };
        let d = g.degree as usize;
        let mut next = vec![0usize; cap + 1];
        for (i, &c) in series.iter().enumerate() {
            for e in 0..=max_exp {
                if i + e * d <= cap {
                    next[i + e * d] += c;
                }
            }
        }
        series = next;
    }
    series
}

#[test]
fn basis_sizes_match_poincare_series_across_the_catalog() {
    let catalog = Catalog::default();
    for g in Catalog::groups(12) {
        for p in g.relevant_primes() {
            let data = catalog.entry(&g, p).unwrap();
            let pres = data.presentation();
            let counts = poincare_counts(pres, 8);
            for d in 0..=8 {
                assert_eq!(pres.basis(d).len(), counts[d as usize], "{g} p={p} degree {d}");
            }
        }
    }
}

fn pu3() -> Presentation {
    Catalog::default().entry(&GroupId::PU { n: 3 }, 3).unwrap().hopf.presentation().clone()
}

#[test]
fn degree_three_basis_of_pu3() {
    let pres = pu3();
    let names: Vec<String> = pres.basis(3).iter().map(|m| pres.format_monomial(m, Style::Unicode)).collect();
    assert_eq!(names, ["x3", "x1·y2"]);
}

#[test]
fn relations_and_signs_at_odd_prime() {
    let pres = pu3();
    assert!(pres.normal_form(&[("x1", 2)]).unwrap().is_zero());
    assert!(pres.normal_form(&[("y2", 3)]).unwrap().is_zero());
    let x3x1 = pres.normal_form(&[("x3", 1), ("x1", 1)]).unwrap();
    let x1x3 = pres.normal_form(&[("x1", 1), ("x3", 1)]).unwrap();
    assert_eq!(x3x1, x1x3.neg());
    let y2x1 = pres.normal_form(&[("y2", 1), ("x1", 1)]).unwrap();
    let x1y2 = pres.normal_form(&[("x1", 1), ("y2", 1)]).unwrap();
    assert_eq!(y2x1, x1y2);
}

#[test]
fn square_linked_generator_squares_to_its_target() {
    let pres = Presentation::new(
        2,
        vec![GeneratorSpec::square_linked("a", 1, Some("b")), GeneratorSpec::truncated("b", 2, 4)],
        10,
    )
    .unwrap();
    let a2 = pres.normal_form(&[("a", 2)]).unwrap();
    assert_eq!(a2, pres.generator("b").unwrap());
    let a8 = pres.normal_form(&[("a", 8)]).unwrap();
    assert!(a8.is_zero(), "a^8 = b^4 = 0");
}

#[test]
fn invalid_presentations_are_rejected() {
    let bad = [
        (3, vec![GeneratorSpec::exterior("x", 2)]),
        (3, vec![GeneratorSpec::truncated("y", 3, 3)]),
        (3, vec![GeneratorSpec::square_linked("a", 1, None)]),
        (2, vec![GeneratorSpec::truncated("y", 2, 1)]),
        (2, vec![GeneratorSpec::exterior("x", 1), GeneratorSpec::exterior("x", 3)]),
        (4, vec![GeneratorSpec::exterior("x", 1)]),
        (2, vec![GeneratorSpec::square_linked("a", 1, Some("b")), GeneratorSpec::exterior("b", 3)]),
    ];
    for (p, gens) in bad {
        let r = Presentation::new(p, gens.clone(), 8);
        assert!(matches!(r, Err(AlgebraError::InvalidPresentation(_))), "{gens:?} at {p}");
    }
}

#[test]
fn degree_cap_is_enforced() {
    let pres = pu3();
    assert!(pres.normal_form(&[("x1", 1), ("y2", 2), ("x3", 1)]).is_ok());
    assert_eq!(
        pres.normal_form(&[("x3", 3)]),
        Err(AlgebraError::DegreeCapExceeded { degree: 9, cap: 8 })
    );
}

#[test]
fn tensor_formatting() {
    let pres = pu3();
    let x1 = pres.generator("x1").unwrap();
    let y2 = pres.generator("y2").unwrap();
    let t = pres.tensor(&[x1.clone(), y2.clone()]).sub(&pres.tensor(&[y2, x1]));
    assert_eq!(pres.format_tensor(&t, Style::Unicode), "x1⊗y2 - y2⊗x1");
    assert_eq!(pres.format_tensor(&t, Style::Ascii), "x1 (x) y2 - y2 (x) x1");
    assert_eq!(pres.format_tensor(&TensorElement::zero(3), Style::Unicode), "0");
}

#[test]
fn koszul_swap_of_odd_classes_changes_sign() {
    let pres = pu3();
    let x1 = pres.generator("x1").unwrap();
    let x3 = pres.generator("x3").unwrap();
    let t = pres.tensor(&[x1.clone(), x3.clone()]);
    assert_eq!(pres.koszul_swap(&t, 0).unwrap(), pres.tensor(&[x3, x1]).neg());
}

// Presentations with generators of both parities, and a large cap so products stay in range.
fn mixed(p: u32) -> Presentation {
    let gens = if p == 2 {
        vec![
            GeneratorSpec::square_linked("a1", 1, Some("b2")),
            GeneratorSpec::truncated("b2", 2, 4),
            GeneratorSpec::exterior("c3", 3),
            GeneratorSpec::truncated("d4", 4, 2),
        ]
    } else {
        vec![
            GeneratorSpec::exterior("x1", 1),
            GeneratorSpec::truncated("y2", 2, p),
            GeneratorSpec::exterior("x3", 3),
            GeneratorSpec::truncated("y4", 4, 2),
        ]
    };
    Presentation::new(p, gens, 64).unwrap()
}

fn word() -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0usize..4, 1u32..3), 0..4)
}

/// A homogeneous element: random words of one degree with random coefficients.
fn homogeneous(pres: &Presentation, words: &[Vec<(usize, u32)>], coeffs: &[u32]) -> Element {
    let p = pres.prime();
    let mut out = pres.zero();
    let mut degree = None;
    for (w, c) in words.iter().zip(coeffs) {
        let e = pres.normal_form_indexed(w).unwrap();
        let Some(d) = e.degree() else { continue };
        if *degree.get_or_insert(d) == d {
            out.add_assign(&e.scale(c % p));
        }
    }
    out
}

fn sign(p: u32, a: &Element, b: &Element) -> u32 {
    let odd = a.degree().unwrap_or(0) * b.degree().unwrap_or(0) % 2 == 1;
    if odd { p - 1 } else { 1 }
}

proptest! {
    #[test]
    fn normal_form_is_idempotent(p in prop::sample::select(vec![2u32, 3, 5]), w in word()) {
        let pres = mixed(p);
        let once = pres.normal_form_indexed(&w).unwrap();
        let mut again = pres.zero();
        for (m, c) in once.iter() {
            let word: Vec<(usize, u32)> =
                m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
            again.add_assign(&pres.normal_form_indexed(&word).unwrap().scale(c));
        }
        prop_assert_eq!(once, again);
    }

    #[test]
    fn multiplication_is_associative(
        p in prop::sample::select(vec![2u32, 3, 5]),
        a in word(), b in word(), c in word(),
    ) {
        let pres = mixed(p);
        let (a, b, c) = (
            pres.normal_form_indexed(&a).unwrap(),
            pres.normal_form_indexed(&b).unwrap(),
            pres.normal_form_indexed(&c).unwrap(),
        );
        let left = pres.mul(&pres.mul(&a, &b).unwrap(), &c).unwrap();
        let right = pres.mul(&a, &pres.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_is_graded_commutative(
        p in prop::sample::select(vec![2u32, 3, 5, 7]),
        wa in prop::collection::vec(word(), 1..3), ca in prop::collection::vec(1u32..7, 2),
        wb in prop::collection::vec(word(), 1..3), cb in prop::collection::vec(1u32..7, 2),
    ) {
        let pres = mixed(p);
        let a = homogeneous(&pres, &wa, &ca);
        let b = homogeneous(&pres, &wb, &cb);
        let ab = pres.mul(&a, &b).unwrap();
        let ba = pres.mul(&b, &a).unwrap();
        prop_assert_eq!(ab, ba.scale(sign(p, &a, &b)));
    }

    #[test]
    fn unary_tensor_product_is_multiplication(
        p in prop::sample::select(vec![2u32, 3]), a in word(), b in word(),
    ) {
        let pres = mixed(p);
        let a = pres.normal_form_indexed(&a).unwrap();
        let b = pres.normal_form_indexed(&b).unwrap();
        let t = pres.tensor_mul(&pres.tensor(std::slice::from_ref(&a)), &pres.tensor(std::slice::from_ref(&b))).unwrap();
        prop_assert_eq!(t, pres.tensor(&[pres.mul(&a, &b).unwrap()]));
    }

    #[test]
    fn koszul_swap_is_an_involutive_algebra_map(
        p in prop::sample::select(vec![2u32, 3, 5]),
        a in word(), b in word(), c in word(), d in word(),
    ) {
        let pres = mixed(p);
        let e = |w: &Vec<(usize, u32)>| pres.normal_form_indexed(w).unwrap();
        let s = pres.tensor(&[e(&a), e(&b)]);
        let t = pres.tensor(&[e(&c), e(&d)]);
        let swapped = pres.koszul_swap(&s, 0).unwrap();
        prop_assert_eq!(pres.koszul_swap(&swapped, 0).unwrap(), s.clone());
        let st = pres.tensor_mul(&s, &t).unwrap();
        let images = pres.tensor_mul(&swapped, &pres.koszul_swap(&t, 0).unwrap()).unwrap();
        prop_assert_eq!(pres.koszul_swap(&st, 0).unwrap(), images);
    }
}
