//! Bockstein bookkeeping for integral torsion orders, and induced maps on
//! Tor and Ext of finite cyclic groups.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{AlgebraError, Element, Monomial, Presentation, TensorElement, TensorMonomial};
use crate::zp;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorsionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no height-{height} Bockstein rule determines the value on `{class}`")]
    NotDefined { class: String, height: u32 },
    #[error("target is not hit by any Bockstein up to height {max_height}")]
    NotHit { max_height: u32 },
    #[error("target class is zero")]
    ZeroTarget,
    #[error("invalid Bockstein rule: {0}")]
    InvalidRule(String),
    #[error("{0}")]
    Domain(String),
}

type Result<T> = std::result::Result<T, TorsionError>;

/// Values of β^(r) on generators, keyed by (generator index, height).
#[derive(Debug, Clone)]
pub struct BocksteinRules {
    prime: u32,
    rules: HashMap<(usize, u32), Element>,
}

impl BocksteinRules {
    pub fn new(pres: &Presentation) -> Self {
        BocksteinRules { prime: pres.prime(), rules: HashMap::new() }
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Record β^(height)(source) = image. A zero image means the Bockstein vanishes.
    pub fn add(&mut self, pres: &Presentation, source: &str, height: u32, image: Element) -> Result<()> {
        let i = pres.generator_index(source)?;
        let degree = pres.generators()[i].degree;
        if height == 0 {
            return Err(TorsionError::InvalidRule("height must be positive".into()));
        }
        if let Some(d) = image.degree() {
            if d != degree + 1 {
                return Err(TorsionError::InvalidRule(format!(
                    "β({source}) must have degree {}",
                    degree + 1
                )));
            }
        } else if !image.is_zero() {
            return Err(TorsionError::InvalidRule(format!("β({source}) is not homogeneous")));
        }
        for j in 1..height {
            if let Some(lower) = self.rules.get(&(i, j)) {
                if !lower.is_zero() {
                    return Err(TorsionError::InvalidRule(format!(
                        "β^({height})({source}) needs β^({j})({source}) = 0"
                    )));
                }
            }
        }
        self.rules.insert((i, height), image);
        Ok(())
    }

    pub fn add_zero(&mut self, pres: &Presentation, source: &str, height: u32) -> Result<()> {
        self.add(pres, source, height, pres.zero())
    }

    pub fn rule(&self, generator: usize, height: u32) -> Option<&Element> {
        self.rules.get(&(generator, height))
    }
}

fn not_defined(pres: &Presentation, m: &Monomial, height: u32) -> TorsionError {
    TorsionError::NotDefined { class: pres.format_monomial(m, Default::default()), height }
}

/// β^(r) of a single normal-form monomial.
fn bockstein_monomial(pres: &Presentation, rules: &BocksteinRules, m: &Monomial, r: u32) -> Result<Element> {
    let p = pres.prime();
    if m.is_unit() {
        return Ok(pres.zero());
    }
    if r >= 2 {
        let exps = m.exponents();
        let mut present = exps.iter().enumerate().filter(|(_, &e)| e > 0);
        let (Some((g, &1)), None) = (present.next(), present.next()) else {
            return Err(not_defined(pres, m, r));
        };
        for j in 1..r {
            match rules.rule(g, j) {
                Some(img) if img.is_zero() => {}
                _ => return Err(not_defined(pres, m, r)),
            }
        }
        return rules.rule(g, r).cloned().ok_or_else(|| not_defined(pres, m, r));
    }
    // Leibniz rule over the word g_1 g_1 ... g_k in generator order.
    let word: Vec<usize> = m
        .exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect();
    let gen = |i: usize| Element::term(p, pres.generator_monomial(i), 1);
    let mut out = pres.zero();
    let mut before_degree = 0;
    for (pos, &g) in word.iter().enumerate() {
        let image = rules.rule(g, 1).ok_or_else(|| not_defined(pres, &pres.generator_monomial(g), 1))?;
        let mut term = pres.unit();
        for &h in &word[..pos] {
            term = pres.mul(&term, &gen(h))?;
        }
        term = pres.mul(&term, image)?;
        for &h in &word[pos + 1..] {
            term = pres.mul(&term, &gen(h))?;
        }
        if before_degree % 2 == 1 {
            term = term.neg();
        }
        out.add_assign(&term);
        before_degree += pres.generators()[g].degree;
    }
    Ok(out)
}

/// β^(r) on a tensor, extended across the tensor factors with the sign (-1)^{|u|}.
pub fn bockstein_apply(
    pres: &Presentation,
    rules: &BocksteinRules,
    x: &TensorElement,
    r: u32,
) -> Result<TensorElement> {
    let p = pres.prime();
    let mut out = TensorElement::zero(p);
    for (m, c) in x.iter() {
        let mut before = 0;
        for (i, f) in m.factors().iter().enumerate() {
            let image = bockstein_monomial(pres, rules, f, r)?;
            let c = if before % 2 == 1 { zp::neg(c, p) } else { c };
            for (im, ic) in image.iter() {
                let mut factors = m.factors().to_vec();
                factors[i] = im.clone();
                out.add_term(TensorMonomial::new(factors), zp::mul(c, ic, p));
            }
            before += f.degree();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralOrderResult {
    pub order: u64,
    pub height: u32,
    pub witness: TensorElement,
}

/// Smallest r ≤ `max_height` such that the target is β^(r) of a class on which
/// the lower Bocksteins vanish. The order of the integral class is p^r.
pub fn integral_order(
    pres: &Presentation,
    rules: &BocksteinRules,
    target: &TensorElement,
    search_space: &[TensorMonomial],
    max_height: u32,
) -> Result<IntegralOrderResult> {
    let p = pres.prime();
    if target.is_zero() {
        return Err(TorsionError::ZeroTarget);
    }
    for r in 1..=max_height {
        // Candidates on which β^(1..=r) are all defined.
        let mut columns: Vec<(TensorMonomial, Vec<TensorElement>)> = Vec::new();
        'candidate: for m in search_space {
            let single = TensorElement::term(p, m.clone(), 1);
            let mut images = Vec::new();
            for j in 1..=r {
                match bockstein_apply(pres, rules, &single, j) {
                    Ok(img) => images.push(img),
                    Err(TorsionError::NotDefined { .. }) => continue 'candidate,
                    Err(e) => return Err(e),
                }
            }
            columns.push((m.clone(), images));
        }
        if columns.is_empty() {
            continue;
        }
        // Rows: (height, monomial). Height r must equal the target, lower heights vanish.
        let mut rows: BTreeMap<(u32, TensorMonomial), usize> = BTreeMap::new();
        for (_, images) in &columns {
            for (j, img) in images.iter().enumerate() {
                for k in img.keys() {
                    let n = rows.len();
                    rows.entry((j as u32 + 1, k.clone())).or_insert(n);
                }
            }
        }
        for k in target.keys() {
            let n = rows.len();
            rows.entry((r, k.clone())).or_insert(n);
        }
        let mut matrix = vec![vec![0u32; rows.len()]; columns.len()];
        for (col, (_, images)) in columns.iter().enumerate() {
            for (j, img) in images.iter().enumerate() {
                for (k, c) in img.iter() {
                    matrix[col][rows[&(j as u32 + 1, k.clone())]] = c;
                }
            }
        }
        let mut rhs = vec![0u32; rows.len()];
        for (k, c) in target.iter() {
            rhs[rows[&(r, k.clone())]] = c;
        }
        if let Some(x) = zp::solve(&matrix, &rhs, p) {
            let mut witness = TensorElement::zero(p);
            for ((m, _), c) in columns.iter().zip(x) {
                witness.add_term(m.clone(), c);
            }
            return Ok(IntegralOrderResult { order: (p as u64).pow(r), height: r, witness });
        }
    }
    Err(TorsionError::NotHit { max_height })
}

/// The homomorphism Z_a → Z_b sending 1 to `multiplier`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicMap {
    domain: u64,
    codomain: u64,
    multiplier: u64,
}

impl CyclicMap {
    pub fn new(domain: u64, codomain: u64, multiplier: u64) -> Result<Self> {
        if domain == 0 || codomain == 0 {
            return Err(TorsionError::Domain("cyclic groups must have positive order".into()));
        }
        let multiplier = multiplier % codomain;
        if !(domain as u128 * multiplier as u128).is_multiple_of(codomain as u128) {
            return Err(TorsionError::Domain(format!(
                "1 ↦ {multiplier} does not define a map Z_{domain} → Z_{codomain}"
            )));
        }
        Ok(CyclicMap { domain, codomain, multiplier })
    }

    pub fn identity(n: u64) -> Self {
        CyclicMap { domain: n, codomain: n, multiplier: 1 % n }
    }

    pub fn domain(&self) -> u64 {
        self.domain
    }

    pub fn codomain(&self) -> u64 {
        self.codomain
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    pub fn apply(&self, x: u64) -> u64 {
        ((x as u128 * self.multiplier as u128) % self.codomain as u128) as u64
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CyclicMap) -> Result<CyclicMap> {
        if self.codomain != next.domain {
            return Err(TorsionError::Domain("maps are not composable".into()));
        }
        CyclicMap::new(self.domain, next.codomain, next.apply(self.multiplier))
    }

    /// Degree-1 part of the lift of this map to the resolutions Z --a--> Z and Z --b--> Z.
    fn resolution_lift(&self) -> u64 {
        self.domain * self.multiplier / self.codomain
    }

    /// The induced map Ext(Z_b, Z) → Ext(Z_a, Z), i.e. Z_b → Z_a.
    pub fn ext_dual(&self) -> CyclicMap {
        CyclicMap::new(self.codomain, self.domain, self.resolution_lift())
            .expect("dual of a well-defined map is well defined")
    }

    /// Additive order of the image of 1.
    pub fn image_order(&self) -> u64 {
        additive_order(self.multiplier, self.codomain)
    }
}

/// Smallest t ≥ 1 with t·x ≡ 0 mod n, by direct search.
pub fn additive_order(x: u64, n: u64) -> u64 {
    (1..=n).find(|t| (t * x).is_multiple_of(n)).unwrap_or(n)
}

pub fn tor_cyclic(a: u64, b: u64) -> u64 {
    zp::gcd(a, b)
}

/// Tor(f, g): Tor(Z_a, Z_b) → Tor(Z_a', Z_b'), written on the cyclic generators
/// of both sides. Tor(Z_a, Z_b) is the kernel of multiplication by a on Z_b,
/// generated by b / gcd(a, b).
pub fn tor_map(f: &CyclicMap, g: &CyclicMap) -> Result<CyclicMap> {
    let (a, b) = (f.domain, g.domain);
    let (a2, b2) = (f.codomain, g.codomain);
    let source = tor_cyclic(a, b);
    let target = tor_cyclic(a2, b2);
    let generator = b / source;
    let image = ((f.resolution_lift() as u128 * g.multiplier as u128 * generator as u128)
        % b2 as u128) as u64;
    let target_generator = b2 / target;
    if !image.is_multiple_of(target_generator) {
        return Err(TorsionError::Domain("image leaves the Tor subgroup".into()));
    }
    CyclicMap::new(source, target, image / target_generator)
}

/// Order of the image of a generator of Tor(Z_n, Z_n) in Tor(Z_k, Z_k) under the
/// map induced by the quotient SU(n) → SU(n)/Z_k.
pub fn tor_pushforward_order(n: u64, k: u64) -> Result<u64> {
    if k == 0 || n == 0 || !n.is_multiple_of(k) {
        return Err(TorsionError::Domain(format!("{k} does not divide {n}")));
    }
    let on_homology = CyclicMap::new(k, n, n / k)?;
    let on_cohomology = on_homology.ext_dual();
    let first = tor_map(&on_cohomology, &CyclicMap::identity(n))?;
    let second = tor_map(&CyclicMap::identity(k), &on_cohomology)?;
    Ok(first.then(&second)?.image_order())
}

/// Closed form k / gcd(k, n/k) of the pushforward order.
pub fn pushforward_order_formula(n: u64, k: u64) -> u64 {
    k / zp::gcd(k, n / k)
}

pub fn assemble_l0(per_prime: &BTreeMap<u64, u64>) -> u64 {
    per_prime.values().fold(1, |acc, &o| zp::lcm(acc, o))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_map_validation() {
        assert!(CyclicMap::new(2, 4, 1).is_err());
        assert!(CyclicMap::new(2, 4, 2).is_ok());
        let f = CyclicMap::new(4, 8, 2).unwrap();
        assert_eq!(f.ext_dual(), CyclicMap::new(8, 4, 1).unwrap());
    }

    #[test]
    fn pushforward_small_cases() {
        assert_eq!(tor_pushforward_order(4, 4).unwrap(), 4);
        assert_eq!(tor_pushforward_order(4, 2).unwrap(), 1);
        assert_eq!(tor_pushforward_order(8, 4).unwrap(), 2);
        assert!(tor_pushforward_order(6, 4).is_err());
    }
}
