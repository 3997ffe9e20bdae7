//! Finitely presented graded-commutative algebras over Z/p, their elements
//! and tensor powers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::zp;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("tensor arity mismatch ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("tensor position {0} out of range")]
    BadPosition(usize),
}

type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// g^2 = 0
    Exterior,
    /// g^height = 0
    Truncated { height: u32 },
    /// g^2 = target, or 0 when there is no target (p = 2 only).
    SquareLinked { target: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub relation: Relation,
}

impl GeneratorSpec {
    pub fn exterior(name: impl Into<String>, degree: u32) -> Self {
        GeneratorSpec { name: name.into(), degree, relation: Relation::Exterior }
    }

    pub fn truncated(name: impl Into<String>, degree: u32, height: u32) -> Self {
        GeneratorSpec { name: name.into(), degree, relation: Relation::Truncated { height } }
    }

    pub fn square_linked(name: impl Into<String>, degree: u32, target: Option<&str>) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            relation: Relation::SquareLinked { target: target.map(str::to_string) },
        }
    }

    /// Largest exponent allowed in a normal-form monomial.
    fn max_exponent(&self) -> u32 {
        match self.relation {
            Relation::Exterior | Relation::SquareLinked { .. } => 1,
            Relation::Truncated { height } => height - 1,
        }
    }
}

/// A monomial in normal form. Ordered by degree, then word length, then
/// with earlier generators first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn length(&self) -> u32 {
        self.exps.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then(self.length().cmp(&other.length()))
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorMonomial {
    factors: Vec<Monomial>,
}

impl TensorMonomial {
    pub fn new(factors: Vec<Monomial>) -> Self {
        TensorMonomial { factors }
    }

    pub fn factors(&self) -> &[Monomial] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(Monomial::degree).sum()
    }
}

pub trait Graded {
    fn degree(&self) -> u32;
}

impl Graded for Monomial {
    fn degree(&self) -> u32 {
        self.degree
    }
}

impl Graded for TensorMonomial {
    fn degree(&self) -> u32 {
        TensorMonomial::degree(self)
    }
}

/// A linear combination with coefficients in Z/p. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Combination<K: Ord> {
    prime: u32,
    terms: BTreeMap<K, u32>,
}

pub type Element = Combination<Monomial>;
pub type TensorElement = Combination<TensorMonomial>;

impl<K: Ord + Clone> Combination<K> {
    pub fn zero(prime: u32) -> Self {
        Combination { prime, terms: BTreeMap::new() }
    }

    pub fn term(prime: u32, key: K, coeff: u32) -> Self {
        let mut c = Self::zero(prime);
        c.add_term(key, coeff);
        c
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u32)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> u32 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, key: K, coeff: u32) {
        let p = self.prime;
        let coeff = coeff % p;
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot = zp::add(*slot, coeff, p);
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.prime);
        for (k, v) in self.iter() {
            out.add_term(k.clone(), zp::mul(v, c % self.prime, self.prime));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.prime - 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl<K: Ord + Clone + Graded> Combination<K> {
    /// Common degree of all terms; `None` for zero or inhomogeneous values.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Graded::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl TensorElement {
    pub fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(TensorMonomial::arity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Unicode,
    Ascii,
}

impl Style {
    fn tensor_sep(self) -> &'static str {
        match self {
            Style::Unicode => "⊗",
            Style::Ascii => " (x) ",
        }
    }

    fn product_sep(self) -> &'static str {
        match self {
            Style::Unicode => "·",
            Style::Ascii => "*",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Presentation {
    prime: u32,
    degree_cap: u32,
    generators: Vec<GeneratorSpec>,
    square_to: Vec<Option<usize>>,
    by_name: HashMap<String, usize>,
}

impl Presentation {
    pub fn new(prime: u32, generators: Vec<GeneratorSpec>, degree_cap: u32) -> Result<Self> {
        let bad = |msg: String| Err(AlgebraError::InvalidPresentation(msg));
        if !zp::is_prime(prime as u64) {
            return bad(format!("{prime} is not prime"));
        }
        let mut by_name = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if by_name.insert(g.name.clone(), i).is_some() {
                return bad(format!("duplicate generator `{}`", g.name));
            }
            if g.degree == 0 {
                return bad(format!("generator `{}` has degree 0", g.name));
            }
            match &g.relation {
                Relation::Exterior if prime != 2 && g.degree % 2 == 0 => {
                    return bad(format!("exterior generator `{}` has even degree", g.name));
                }
                Relation::Truncated { height } if *height < 2 => {
                    return bad(format!("truncation height of `{}` is below 2", g.name));
                }
                Relation::Truncated { .. } if prime != 2 && g.degree % 2 == 1 => {
                    return bad(format!("polynomial generator `{}` has odd degree", g.name));
                }
                Relation::SquareLinked { .. } if prime != 2 => {
                    return bad(format!("square-linked generator `{}` needs p = 2", g.name));
                }
                _ => {}
            }
        }
        let mut square_to = Vec::with_capacity(generators.len());
        for g in &generators {
            let target = match &g.relation {
                Relation::SquareLinked { target: Some(t) } => {
                    let Some(&ti) = by_name.get(t) else {
                        return bad(format!("square target `{t}` of `{}` is missing", g.name));
                    };
                    if generators[ti].degree != 2 * g.degree {
                        return bad(format!("square target `{t}` has the wrong degree"));
                    }
                    Some(ti)
                }
                _ => None,
            };
            square_to.push(target);
        }
        Ok(Presentation { prime, degree_cap, generators, square_to, by_name })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn has_generator(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        let i = self.generator_index(name)?;
        self.normal_form_indexed(&[(i, 1)])
    }

    pub fn generator_monomial(&self, index: usize) -> Monomial {
        let mut exps = vec![0; self.generators.len()];
        exps[index] = 1;
        Monomial { degree: self.generators[index].degree, exps }
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial { degree: 0, exps: vec![0; self.generators.len()] }
    }

    pub fn unit(&self) -> Element {
        Element::term(self.prime, self.unit_monomial(), 1)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.prime)
    }

    fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.degree_cap {
            Err(AlgebraError::DegreeCapExceeded { degree, cap: self.degree_cap })
        } else {
            Ok(())
        }
    }

    /// Apply the relations to a raw exponent vector. `None` means the monomial vanishes.
    fn normalize(&self, mut exps: Vec<u32>) -> Result<Option<Monomial>> {
        let degree: u32 = exps.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum();
        self.check_degree(degree)?;
        loop {
            let mut changed = false;
            for i in 0..exps.len() {
                let e = exps[i];
                match self.generators[i].relation {
                    Relation::Exterior if e >= 2 => return Ok(None),
                    Relation::Truncated { height } if e >= height => return Ok(None),
                    Relation::SquareLinked { .. } if e >= 2 => match self.square_to[i] {
                        Some(t) => {
                            exps[t] += e / 2;
                            exps[i] = e % 2;
                            changed = true;
                        }
                        None => return Ok(None),
                    },
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        Ok(Some(Monomial { degree, exps }))
    }

    /// Koszul sign of `a * b` rewritten into generator order, as a residue.
    fn product_sign(&self, a: &Monomial, b: &Monomial) -> u32 {
        if self.prime == 2 {
            return 1;
        }
        let mut odd_a_after = 0u32;
        let mut parity = 0u32;
        for i in (0..self.generators.len()).rev() {
            let d = self.generators[i].degree;
            if (b.exps[i] * d) % 2 == 1 {
                parity ^= odd_a_after & 1;
            }
            if (a.exps[i] * d) % 2 == 1 {
                odd_a_after += 1;
            }
        }
        if parity == 1 {
            self.prime - 1
        } else {
            1
        }
    }

    /// Product of two monomials as `(coefficient, monomial)`, or `None` when it vanishes.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Option<(u32, Monomial)>> {
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        Ok(self.normalize(exps)?.map(|m| (self.product_sign(a, b), m)))
    }

    /// Normal form of a word of generator powers, in the order given.
    pub fn normal_form(&self, word: &[(&str, u32)]) -> Result<Element> {
        let indexed = word
            .iter()
            .map(|(n, e)| Ok((self.generator_index(n)?, *e)))
            .collect::<Result<Vec<_>>>()?;
        self.normal_form_indexed(&indexed)
    }

    pub fn normal_form_indexed(&self, word: &[(usize, u32)]) -> Result<Element> {
        let degree: u32 = word.iter().map(|&(i, e)| e * self.generators[i].degree).sum();
        self.check_degree(degree)?;
        let mut acc = self.unit();
        for &(i, e) in word {
            let mut exps = vec![0; self.generators.len()];
            exps[i] = e;
            let power = match self.normalize(exps)? {
                Some(m) => Element::term(self.prime, m, 1),
                None => return Ok(self.zero()),
            };
            acc = self.mul(&acc, &power)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut out = self.zero();
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                if let Some((s, m)) = self.mul_monomials(ma, mb)? {
                    out.add_term(m, zp::mul(zp::mul(ca, cb, self.prime), s, self.prime));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &Element, e: u32) -> Result<Element> {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Coefficient of the unit monomial.
    pub fn augmentation(&self, a: &Element) -> u32 {
        a.coeff(&self.unit_monomial())
    }

    /// All normal-form monomials of degree exactly `d`, sorted.
    pub fn basis(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0; self.generators.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                let degree = exps.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum();
                out.push(Monomial { degree, exps: exps.clone() });
            }
            return;
        }
        let g = &self.generators[i];
        for e in 0..=g.max_exponent() {
            if e * g.degree > remaining {
                break;
            }
            exps[i] = e;
            self.enumerate(i + 1, remaining - e * g.degree, exps, out);
        }
        exps[i] = 0;
    }

    /// Monomials of the `arity`-fold tensor power in total degree `d`.
    pub fn tensor_basis(&self, arity: usize, d: u32) -> Vec<TensorMonomial> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(arity);
        self.tensor_enumerate(arity, d, &mut current, &mut out);
        out.sort();
        out
    }

    fn tensor_enumerate(
        &self,
        arity: usize,
        remaining: u32,
        current: &mut Vec<Monomial>,
        out: &mut Vec<TensorMonomial>,
    ) {
        if current.len() + 1 == arity {
            for m in self.basis(remaining) {
                current.push(m);
                out.push(TensorMonomial::new(current.clone()));
                current.pop();
            }
            return;
        }
        for d in 0..=remaining {
            for m in self.basis(d) {
                current.push(m);
                self.tensor_enumerate(arity, remaining - d, current, out);
                current.pop();
            }
        }
    }

    /// The tensor `a_1 ⊗ ... ⊗ a_k` of elements.
    pub fn tensor(&self, factors: &[Element]) -> TensorElement {
        let mut acc: Vec<(Vec<Monomial>, u32)> = vec![(Vec::new(), 1)];
        for f in factors {
            let mut next = Vec::new();
            for (ms, c) in &acc {
                for (m, cm) in f.iter() {
                    let mut ms = ms.clone();
                    ms.push(m.clone());
                    next.push((ms, zp::mul(*c, cm, self.prime)));
                }
            }
            acc = next;
        }
        let mut out = TensorElement::zero(self.prime);
        for (ms, c) in acc {
            out.add_term(TensorMonomial::new(ms), c);
        }
        out
    }

    pub fn tensor_unit(&self, arity: usize) -> TensorElement {
        let unit = self.unit_monomial();
        TensorElement::term(self.prime, TensorMonomial::new(vec![unit; arity]), 1)
    }

    pub fn tensor_mul_monomials(
        &self,
        a: &TensorMonomial,
        b: &TensorMonomial,
    ) -> Result<Option<(u32, TensorMonomial)>> {
        if a.arity() != b.arity() {
            return Err(AlgebraError::ArityMismatch(a.arity(), b.arity()));
        }
        let p = self.prime;
        let mut coeff = 1;
        if p != 2 {
            // b_i crosses a_j for i < j
            let mut parity = 0;
            let mut a_after = 0;
            for i in (0..a.arity()).rev() {
                parity += b.factors[i].degree * a_after;
                a_after += a.factors[i].degree;
            }
            if parity % 2 == 1 {
                coeff = p - 1;
            }
        }
        let mut factors = Vec::with_capacity(a.arity());
        for (x, y) in a.factors.iter().zip(&b.factors) {
            match self.mul_monomials(x, y)? {
                Some((s, m)) => {
                    coeff = zp::mul(coeff, s, p);
                    factors.push(m);
                }
                None => return Ok(None),
            }
        }
        Ok(Some((coeff, TensorMonomial::new(factors))))
    }

    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.prime);
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                if let Some((s, m)) = self.tensor_mul_monomials(ma, mb)? {
                    out.add_term(m, zp::mul(zp::mul(ca, cb, self.prime), s, self.prime));
                }
            }
        }
        Ok(out)
    }

    /// Swap factors `i` and `i + 1` with the sign (-1)^{|u||v|}.
    pub fn koszul_swap(&self, a: &TensorElement, i: usize) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.prime);
        for (m, c) in a.iter() {
            if i + 1 >= m.arity() {
                return Err(AlgebraError::BadPosition(i));
            }
            let mut factors = m.factors.clone();
            let sign = factors[i].degree * factors[i + 1].degree;
            factors.swap(i, i + 1);
            let c = if sign % 2 == 1 { zp::neg(c, self.prime) } else { c };
            out.add_term(TensorMonomial::new(factors), c);
        }
        Ok(out)
    }

    /// Multiply factors `i` and `i + 1` together, lowering the arity by one.
    pub fn multiply_adjacent(&self, a: &TensorElement, i: usize) -> Result<TensorElement> {
        let mut out = TensorElement::zero(self.prime);
        for (m, c) in a.iter() {
            if i + 1 >= m.arity() {
                return Err(AlgebraError::BadPosition(i));
            }
            if let Some((s, prod)) = self.mul_monomials(&m.factors[i], &m.factors[i + 1])? {
                let mut factors = m.factors.clone();
                factors.splice(i..i + 2, [prod]);
                out.add_term(TensorMonomial::new(factors), zp::mul(c, s, self.prime));
            }
        }
        Ok(out)
    }

    /// Apply an even-degree linear map to factor `i`.
    pub fn map_factor<F, E>(&self, a: &TensorElement, i: usize, mut f: F) -> std::result::Result<TensorElement, E>
    where
        F: FnMut(&Monomial) -> std::result::Result<Element, E>,
        E: From<AlgebraError>,
    {
        let mut out = TensorElement::zero(self.prime);
        for (m, c) in a.iter() {
            if i >= m.arity() {
                return Err(AlgebraError::BadPosition(i).into());
            }
            let image = f(&m.factors[i])?;
            for (im, ic) in image.iter() {
                let mut factors = m.factors.clone();
                factors[i] = im.clone();
                out.add_term(TensorMonomial::new(factors), zp::mul(c, ic, self.prime));
            }
        }
        Ok(out)
    }

    /// Replace factor `i` by its image under a degree-preserving map into a
    /// tensor square, raising the arity by one.
    pub fn expand_factor<F, E>(&self, a: &TensorElement, i: usize, mut f: F) -> std::result::Result<TensorElement, E>
    where
        F: FnMut(&Monomial) -> std::result::Result<TensorElement, E>,
        E: From<AlgebraError>,
    {
        let mut out = TensorElement::zero(self.prime);
        for (m, c) in a.iter() {
            if i >= m.arity() {
                return Err(AlgebraError::BadPosition(i).into());
            }
            let image = f(&m.factors[i])?;
            for (im, ic) in image.iter() {
                let mut factors = m.factors.clone();
                factors.splice(i..=i, im.factors.iter().cloned());
                out.add_term(TensorMonomial::new(factors), zp::mul(c, ic, self.prime));
            }
        }
        Ok(out)
    }

    pub fn format_monomial(&self, m: &Monomial, style: Style) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let parts: Vec<String> = m
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = &self.generators[i].name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join(style.product_sep())
    }

    pub fn format_tensor_monomial(&self, m: &TensorMonomial, style: Style) -> String {
        let parts: Vec<String> =
            m.factors.iter().map(|f| self.format_monomial(f, style)).collect();
        parts.join(style.tensor_sep())
    }

    pub fn format_element(&self, a: &Element, style: Style) -> String {
        format_terms(a.iter().map(|(m, c)| (self.format_monomial(m, style), c)), self.prime)
    }

    pub fn format_tensor(&self, a: &TensorElement, style: Style) -> String {
        format_terms(a.iter().map(|(m, c)| (self.format_tensor_monomial(m, style), c)), self.prime)
    }
}

fn format_terms(terms: impl Iterator<Item = (String, u32)>, p: u32) -> String {
    let mut out = String::new();
    for (text, c) in terms {
        let c = zp::signed(c, p);
        let magnitude = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        if magnitude != 1 {
            out.push_str(&format!("{magnitude} "));
        }
        out.push_str(&text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
