use prequant::catalog::{Catalog, GroupId};
use prequant::hopf::{vanishes_on_wedge, CoproductTable, HopfAlgebra, HopfError};
use prequant::{Element, GeneratorSpec, Presentation, Style, TensorElement};
use proptest::prelude::*;

fn pu(n: u64, p: u64) -> HopfAlgebra {
    Catalog::default().entry(&GroupId::PU { n }, p).unwrap().hopf
}

fn pascal(n: usize) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1u64]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![1u64; i + 1];
        for j in 1..i {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

#[test]
fn coproduct_of_powers_of_a_primitive_is_binomial() {
    for p in [3u64, 5, 7] {
        let h = pu(p, p);
        let pres = h.presentation();
        let y = pres.generator("y2").unwrap();
        let c = pascal(8);
        for j in 0..(p as u32).min(5) {
            let yj = pres.pow(&y, j).unwrap();
            let mut want = TensorElement::zero(p as u32);
            for i in 0..=j {
                let term = pres.tensor(&[pres.pow(&y, i).unwrap(), pres.pow(&y, j - i).unwrap()]);
                want.add_assign(&term.scale((c[j as usize][i as usize] % p) as u32));
            }
            assert_eq!(h.coproduct(&yj).unwrap(), want, "p={p}, y2^{j}");
        }
    }
}

#[test]
fn antipode_of_x3_in_pu3() {
    let h = pu(3, 3);
    let pres = h.presentation();
    let x3 = pres.generator("x3").unwrap();
    let got = h.antipode(&x3).unwrap();
    assert_eq!(pres.format_element(&got, Style::Unicode), "-x3 + x1·y2");
}

#[test]
fn antipode_negates_primitives() {
    let h = pu(5, 5);
    let pres = h.presentation();
    for name in ["x1", "y2"] {
        let x = pres.generator(name).unwrap();
        assert!(h.is_primitive(&x).unwrap());
        assert_eq!(h.antipode(&x).unwrap(), x.neg());
        assert!(h.phi_star(&x).unwrap().is_zero());
    }
}

#[test]
fn commutator_pullback_vanishes_on_the_wedge() {
    let catalog = Catalog::default();
    for g in Catalog::groups(10) {
        for p in g.relevant_primes() {
            let data = catalog.entry(&g, p).unwrap();
            if let Some(img) = data.lift_image().unwrap() {
                assert!(vanishes_on_wedge(&img), "{g} p={p}");
            }
        }
    }
}

#[test]
fn table_validation() {
    let pres = Presentation::new(3, vec![GeneratorSpec::exterior("x1", 1), GeneratorSpec::exterior("x3", 3)], 8).unwrap();
    let empty = CoproductTable::new();
    assert!(matches!(HopfAlgebra::new(pres.clone(), &empty), Err(HopfError::MissingTableEntry(_))));

    let mut wrong_degree = CoproductTable::new();
    wrong_degree.set("x1", TensorElement::zero(3));
    let x1 = pres.generator("x1").unwrap();
    wrong_degree.set("x3", pres.tensor(&[x1.clone(), x1.clone()]));
    assert!(matches!(HopfAlgebra::new(pres.clone(), &wrong_degree), Err(HopfError::InvalidTable { .. })));

    let mut unit_leg = CoproductTable::new();
    unit_leg.set("x1", TensorElement::zero(3));
    unit_leg.set("x3", pres.tensor(&[pres.generator("x3").unwrap(), pres.unit()]));
    assert!(matches!(HopfAlgebra::new(pres, &unit_leg), Err(HopfError::InvalidTable { .. })));
}

#[test]
fn a_non_coassociative_table_is_caught() {
    // Δ̄(c3) = a1⊗b2 without the matching b2⊗a1-type terms breaks coassociativity.
    let pres = Presentation::new(
        2,
        vec![
            GeneratorSpec::exterior("a1", 1),
            GeneratorSpec::exterior("b2", 2),
            GeneratorSpec::exterior("c3", 3),
        ],
        8,
    )
    .unwrap();
    let a = pres.generator("a1").unwrap();
    let b = pres.generator("b2").unwrap();
    let mut table = CoproductTable::new();
    table.set("a1", TensorElement::zero(2));
    table.set("b2", pres.tensor(&[a.clone(), a.clone()]));
    table.set("c3", pres.tensor(&[a.clone(), b.clone()]));
    let h = HopfAlgebra::new(pres, &table).unwrap();
    let report = h.verify_axioms(6).unwrap();
    assert!(!report.passed());
}

#[test]
fn every_catalog_presentation_passes_the_axioms() {
    let catalog = Catalog::default();
    for g in Catalog::groups(8) {
        for p in g.relevant_primes() {
            let report = catalog.entry(&g, p).unwrap().hopf.verify_axioms(8).unwrap();
            assert!(report.passed(), "{g} p={p}: {:?}", report.failures);
            assert!(report.total_checks() > 0);
        }
    }
}

fn element(h: &HopfAlgebra, word: &[(usize, u32)]) -> Option<Element> {
    h.presentation().normal_form_indexed(word).ok()
}

fn word(gens: usize) -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0..gens, 1u32..3), 0..3)
}

proptest! {
    #[test]
    fn coproduct_is_multiplicative(a in word(3), b in word(3), n in prop::sample::select(vec![3u64, 4, 6, 9])) {
        let p = if n % 3 == 0 { 3 } else { 2 };
        let h = pu(n, p);
        let pres = h.presentation();
        let (Some(x), Some(y)) = (element(&h, &a), element(&h, &b)) else { return Ok(()) };
        let Ok(xy) = pres.mul(&x, &y) else { return Ok(()) };
        let left = h.coproduct(&xy).unwrap();
        let right = pres.tensor_mul(&h.coproduct(&x).unwrap(), &h.coproduct(&y).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn antipode_reverses_products_with_sign(a in word(3), b in word(3)) {
        let h = pu(3, 3);
        let pres = h.presentation();
        let (Some(x), Some(y)) = (element(&h, &a), element(&h, &b)) else { return Ok(()) };
        let Ok(xy) = pres.mul(&x, &y) else { return Ok(()) };
        let left = h.antipode(&xy).unwrap();
        let mut right = pres.mul(&h.antipode(&y).unwrap(), &h.antipode(&x).unwrap()).unwrap();
        if x.degree().unwrap_or(0) * y.degree().unwrap_or(0) % 2 == 1 {
            right = right.neg();
        }
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutator_pullback_is_multiplicative(a in word(3), b in word(3)) {
        let h = pu(3, 3);
        let pres = h.presentation();
        let (Some(x), Some(y)) = (element(&h, &a), element(&h, &b)) else { return Ok(()) };
        let Ok(xy) = pres.mul(&x, &y) else { return Ok(()) };
        let left = h.phi_star(&xy).unwrap();
        let right = pres.tensor_mul(&h.phi_star(&x).unwrap(), &h.phi_star(&y).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
