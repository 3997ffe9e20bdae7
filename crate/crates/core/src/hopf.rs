//! Hopf algebra structure on a presentation: coproduct, antipode and the
//! commutator pullback.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use crate::algebra::{AlgebraError, Element, Monomial, Presentation, TensorElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generator `{0}` has no coproduct rule")]
    MissingTableEntry(String),
    #[error("invalid coproduct rule for `{name}`: {reason}")]
    InvalidTable { name: String, reason: String },
}

type Result<T> = std::result::Result<T, HopfError>;

/// Reduced coproducts of the generators, keyed by generator name.
#[derive(Debug, Clone, Default)]
pub struct CoproductTable {
    entries: BTreeMap<String, TensorElement>,
}

impl CoproductTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, reduced: TensorElement) {
        self.entries.insert(name.into(), reduced);
    }

    pub fn get(&self, name: &str) -> Option<&TensorElement> {
        self.entries.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &TensorElement)> {
        self.entries.iter()
    }
}

pub struct HopfAlgebra {
    pres: Presentation,
    full: Vec<TensorElement>,
    reduced: Vec<TensorElement>,
    coproduct_memo: RwLock<HashMap<Monomial, TensorElement>>,
    antipode_memo: RwLock<HashMap<Monomial, Element>>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfAlgebra").field("pres", &self.pres).finish_non_exhaustive()
    }
}

impl HopfAlgebra {
    pub fn new(pres: Presentation, table: &CoproductTable) -> Result<Self> {
        for name in table.entries.keys() {
            pres.generator_index(name)?;
        }
        let mut full = Vec::new();
        let mut reduced = Vec::new();
        for (i, g) in pres.generators().iter().enumerate() {
            let r = table
                .get(&g.name)
                .cloned()
                .ok_or_else(|| HopfError::MissingTableEntry(g.name.clone()))?;
            let invalid = |reason: &str| HopfError::InvalidTable {
                name: g.name.clone(),
                reason: reason.to_string(),
            };
            for (m, _) in r.iter() {
                if m.arity() != 2 {
                    return Err(invalid("reduced coproduct must have two legs"));
                }
                if m.degree() != g.degree {
                    return Err(invalid("reduced coproduct has the wrong degree"));
                }
                if m.factors().iter().any(Monomial::is_unit) {
                    return Err(invalid("reduced coproduct has a leg of degree 0"));
                }
            }
            let x = Element::term(pres.prime(), pres.generator_monomial(i), 1);
            let one = pres.unit();
            let f = pres.tensor(&[x.clone(), one.clone()]).add(&pres.tensor(&[one, x])).add(&r);
            full.push(f);
            reduced.push(r);
        }
        Ok(HopfAlgebra {
            pres,
            full,
            reduced,
            coproduct_memo: RwLock::new(HashMap::new()),
            antipode_memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn prime(&self) -> u32 {
        self.pres.prime()
    }

    /// Reduced coproduct of generator `index` as given by the table.
    pub fn generator_reduced(&self, index: usize) -> &TensorElement {
        &self.reduced[index]
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<TensorElement> {
        if let Some(hit) = self.coproduct_memo.read().expect("memo lock").get(m) {
            return Ok(hit.clone());
        }
        let mut acc = self.pres.tensor_unit(2);
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                acc = self.pres.tensor_mul(&acc, &self.full[i])?;
            }
        }
        self.coproduct_memo.write().expect("memo lock").insert(m.clone(), acc.clone());
        Ok(acc)
    }

    pub fn coproduct(&self, x: &Element) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.prime());
        for (m, c) in x.iter() {
            out.add_assign(&self.coproduct_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    pub fn reduced_coproduct(&self, x: &Element) -> Result<TensorElement> {
        let one = self.pres.unit();
        let primitive_part = self.pres.tensor(&[x.clone(), one.clone()]).add(&self.pres.tensor(&[one, x.clone()]));
        Ok(self.coproduct(x)?.sub(&primitive_part))
    }

    pub fn is_primitive(&self, x: &Element) -> Result<bool> {
        Ok(self.reduced_coproduct(x)?.is_zero())
    }

    /// c(x) = -x - Σ x'·c(x'') over the reduced coproduct, by recursion on degree.
    pub fn antipode_monomial(&self, m: &Monomial) -> Result<Element> {
        let p = self.prime();
        if m.is_unit() {
            return Ok(self.pres.unit());
        }
        if let Some(hit) = self.antipode_memo.read().expect("memo lock").get(m) {
            return Ok(hit.clone());
        }
        let x = Element::term(p, m.clone(), 1);
        let mut out = x.neg();
        for (t, c) in self.reduced_coproduct(&x)?.iter() {
            let [left, right] = t.factors() else {
                unreachable!("coproduct has two legs");
            };
            let tail = self.antipode_monomial(right)?;
            let head = Element::term(p, left.clone(), c);
            out = out.sub(&self.pres.mul(&head, &tail)?);
        }
        self.antipode_memo.write().expect("memo lock").insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn antipode(&self, x: &Element) -> Result<Element> {
        let mut out = self.pres.zero();
        for (m, c) in x.iter() {
            out.add_assign(&self.antipode_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// Apply the coproduct to factor `i` of a tensor.
    pub fn coproduct_on_factor(&self, t: &TensorElement, i: usize) -> Result<TensorElement> {
        self.pres.expand_factor(t, i, |m| self.coproduct_monomial(m))
    }

    pub fn antipode_on_factor(&self, t: &TensorElement, i: usize) -> Result<TensorElement> {
        self.pres.map_factor(t, i, |m| self.antipode_monomial(m))
    }

    /// Pullback of the commutator map (a, b) ↦ a b a⁻¹ b⁻¹ on cohomology.
    pub fn phi_star(&self, x: &Element) -> Result<TensorElement> {
        let t = self.coproduct(x)?;
        let t = self.coproduct_on_factor(&t, 1)?;
        let t = self.coproduct_on_factor(&t, 0)?;
        let t = self.antipode_on_factor(&t, 2)?;
        let t = self.antipode_on_factor(&t, 3)?;
        let t = self.pres.koszul_swap(&t, 1)?;
        let t = self.pres.multiply_adjacent(&t, 2)?;
        Ok(self.pres.multiply_adjacent(&t, 0)?)
    }

    /// Collapse factor `i` of an arity-2 tensor with the augmentation.
    fn counit_collapse(&self, t: &TensorElement, i: usize) -> Element {
        let mut out = self.pres.zero();
        for (m, c) in t.iter() {
            let f = m.factors();
            if f[i].is_unit() {
                out.add_term(f[1 - i].clone(), c);
            }
        }
        out
    }

    fn multiply_legs(&self, t: &TensorElement) -> Result<Element> {
        let merged = self.pres.multiply_adjacent(t, 0)?;
        let mut out = self.pres.zero();
        for (m, c) in merged.iter() {
            out.add_term(m.factors()[0].clone(), c);
        }
        Ok(out)
    }

    /// Run the Hopf axiom checks on every basis monomial of degree at most `max_degree`.
    pub fn verify_axioms(&self, max_degree: u32) -> Result<AxiomReport> {
        let pres = &self.pres;
        let max_degree = max_degree.min(pres.degree_cap());
        let mut report = AxiomReport::default();
        let mut bases = Vec::new();
        for d in 0..=max_degree {
            bases.push(pres.basis(d));
        }
        for m in bases.iter().flatten() {
            let label = || pres.format_monomial(m, Default::default());
            let x = Element::term(pres.prime(), m.clone(), 1);
            let delta = self.coproduct(&x)?;

            let left = self.coproduct_on_factor(&delta, 0)?;
            let right = self.coproduct_on_factor(&delta, 1)?;
            report.record(Axiom::Coassociativity, left == right, label);

            let ok = self.counit_collapse(&delta, 0) == x && self.counit_collapse(&delta, 1) == x;
            report.record(Axiom::Counit, ok, label);

            let expected = if m.is_unit() { pres.unit() } else { pres.zero() };
            let a = self.multiply_legs(&self.antipode_on_factor(&delta, 1)?)?;
            let b = self.multiply_legs(&self.antipode_on_factor(&delta, 0)?)?;
            report.record(Axiom::Antipode, a == expected && b == expected, label);

            let twice = self.antipode(&self.antipode(&x)?)?;
            report.record(Axiom::Involution, twice == x, label);

            if !m.is_unit() && self.is_primitive(&x)? {
                report.record(Axiom::PrimitiveVanishing, self.phi_star(&x)?.is_zero(), label);
            }
        }
        for (da, ba) in bases.iter().enumerate().skip(1) {
            for (db, bb) in bases.iter().enumerate().skip(1) {
                if da + db > max_degree as usize {
                    continue;
                }
                for a in ba {
                    for b in bb {
                        let label = || {
                            format!(
                                "{} * {}",
                                pres.format_monomial(a, Default::default()),
                                pres.format_monomial(b, Default::default())
                            )
                        };
                        let ea = Element::term(pres.prime(), a.clone(), 1);
                        let eb = Element::term(pres.prime(), b.clone(), 1);
                        let lhs = self.coproduct(&pres.mul(&ea, &eb)?)?;
                        let rhs = pres.tensor_mul(&self.coproduct(&ea)?, &self.coproduct(&eb)?)?;
                        report.record(Axiom::AlgebraMap, lhs == rhs, label);
                    }
                }
            }
        }
        Ok(report)
    }
}

/// True when no term of an arity-2 tensor has a degree-0 leg.
pub fn vanishes_on_wedge(t: &TensorElement) -> bool {
    t.keys().all(|m| m.factors().iter().all(|f| !f.is_unit()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Coassociativity,
    Counit,
    Antipode,
    Involution,
    AlgebraMap,
    PrimitiveVanishing,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::Antipode => "antipode",
            Axiom::Involution => "antipode involution",
            Axiom::AlgebraMap => "algebra map",
            Axiom::PrimitiveVanishing => "primitive vanishing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub subject: String,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub checked: BTreeMap<Axiom, usize>,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    fn record(&mut self, axiom: Axiom, ok: bool, subject: impl FnOnce() -> String) {
        *self.checked.entry(axiom).or_default() += 1;
        if !ok {
            self.failures.push(AxiomFailure { axiom, subject: subject() });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.checked.values().sum()
    }
}
