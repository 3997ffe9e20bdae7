//! Cohomology data for the non-simply-connected compact simple Lie groups and
//! the minimal level computation built on it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraError, Element, GeneratorSpec, Presentation, TensorElement};
use crate::hopf::{vanishes_on_wedge, CoproductTable, HopfAlgebra, HopfError};
use crate::torsion::{self, BocksteinRules, TorsionError};
use crate::zp;

pub const DEFAULT_DEGREE_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("cannot parse group `{0}`")]
    Parse(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("prime {prime} does not divide the order of π₁({group})")]
    IrrelevantPrime { group: String, prime: u64 },
    #[error("degree cap {0} is below 8")]
    DegreeCapTooSmall(u32),
    #[error("consistency failure for {group}: {detail}")]
    Consistency { group: String, detail: String },
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
}

impl From<AlgebraError> for CatalogError {
    fn from(e: AlgebraError) -> Self {
        CatalogError::Hopf(HopfError::Algebra(e))
    }
}

type Result<T> = std::result::Result<T, CatalogError>;

/// A compact simple Lie group with nontrivial fundamental group.
///
/// `PO { n }` stands for PO(2n) and `Ss { n }` for Ss(4n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    PU { n: u64 },
    SuModZk { n: u64, k: u64 },
    PSp { n: u64 },
    SO { n: u64 },
    PO { n: u64 },
    Ss { n: u64 },
    PE6,
    PE7,
}

impl GroupId {
    pub fn pu(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(CatalogError::InvalidGroup(format!("PU({n}) needs n ≥ 2")));
        }
        Ok(GroupId::PU { n })
    }

    /// SU(n)/Z_k; k = n gives PU(n).
    pub fn su_mod(n: u64, k: u64) -> Result<Self> {
        if n < 2 || k < 2 || !n.is_multiple_of(k) {
            return Err(CatalogError::InvalidGroup(format!(
                "SU({n})/Z{k} needs n ≥ 2 and 1 < k dividing n"
            )));
        }
        if k == n {
            return Ok(GroupId::PU { n });
        }
        Ok(GroupId::SuModZk { n, k })
    }

    pub fn psp(n: u64) -> Result<Self> {
        if n < 1 {
            return Err(CatalogError::InvalidGroup("PSp(n) needs n ≥ 1".into()));
        }
        Ok(GroupId::PSp { n })
    }

    pub fn so(n: u64) -> Result<Self> {
        if n < 7 {
            return Err(CatalogError::InvalidGroup(format!("SO({n}) needs n ≥ 7")));
        }
        Ok(GroupId::SO { n })
    }

    /// PO(m) for even m ≥ 8.
    pub fn po(m: u64) -> Result<Self> {
        if !m.is_multiple_of(2) || m < 8 {
            return Err(CatalogError::InvalidGroup(format!("PO({m}) needs an even m ≥ 8")));
        }
        Ok(GroupId::PO { n: m / 2 })
    }

    /// Ss(m) for m ≡ 0 mod 4, m ≥ 8.
    pub fn ss(m: u64) -> Result<Self> {
        if !m.is_multiple_of(4) || m < 8 {
            return Err(CatalogError::InvalidGroup(format!("Ss({m}) needs m ≡ 0 mod 4 and m ≥ 8")));
        }
        Ok(GroupId::Ss { n: m / 4 })
    }

    /// Order of the fundamental group.
    pub fn pi1_order(&self) -> u64 {
        match *self {
            GroupId::PU { n } => n,
            GroupId::SuModZk { k, .. } => k,
            GroupId::PSp { .. } | GroupId::SO { .. } | GroupId::Ss { .. } | GroupId::PE7 => 2,
            GroupId::PO { .. } => 4,
            GroupId::PE6 => 3,
        }
    }

    /// Order of the center of the universal cover.
    pub fn cover_center_order(&self) -> u64 {
        match *self {
            GroupId::PU { n } | GroupId::SuModZk { n, .. } => n,
            GroupId::PSp { .. } | GroupId::PE7 => 2,
            GroupId::SO { n } => {
                if n % 2 == 1 {
                    2
                } else {
                    4
                }
            }
            GroupId::PO { .. } | GroupId::Ss { .. } => 4,
            GroupId::PE6 => 3,
        }
    }

    pub fn relevant_primes(&self) -> Vec<u64> {
        zp::prime_divisors(self.pi1_order())
    }

    /// The textual form accepted by [`GroupId::from_str`].
    pub fn code(&self) -> String {
        match *self {
            GroupId::PU { n } => format!("PU:{n}"),
            GroupId::SuModZk { n, k } => format!("SU:{n}/{k}"),
            GroupId::PSp { n } => format!("PSp:{n}"),
            GroupId::SO { n } => format!("SO:{n}"),
            GroupId::PO { n } => format!("PO:{}", 2 * n),
            GroupId::Ss { n } => format!("Ss:{}", 4 * n),
            GroupId::PE6 => "PE6".into(),
            GroupId::PE7 => "PE7".into(),
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupId::PU { n } => write!(f, "PU({n})"),
            GroupId::SuModZk { n, k } => write!(f, "SU({n})/Z{k}"),
            GroupId::PSp { n } => write!(f, "PSp({n})"),
            GroupId::SO { n } => write!(f, "SO({n})"),
            GroupId::PO { n } => write!(f, "PO({})", 2 * n),
            GroupId::Ss { n } => write!(f, "Ss({})", 4 * n),
            GroupId::PE6 => write!(f, "PE6"),
            GroupId::PE7 => write!(f, "PE7"),
        }
    }
}

impl FromStr for GroupId {
    type Err = CatalogError;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let parse_err = || CatalogError::Parse(text.to_string());
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| parse_err());
        match text {
            "PE6" => return Ok(GroupId::PE6),
            "PE7" => return Ok(GroupId::PE7),
            _ => {}
        }
        let (family, rest) = text.split_once(':').ok_or_else(parse_err)?;
        match family {
            "PU" => GroupId::pu(num(rest)?),
            "SU" => {
                let (n, k) = rest.split_once('/').ok_or_else(parse_err)?;
                GroupId::su_mod(num(n)?, num(k)?)
            }
            "PSp" => GroupId::psp(num(rest)?),
            "SO" => GroupId::so(num(rest)?),
            "PO" => GroupId::po(num(rest)?),
            "Ss" => GroupId::ss(num(rest)?),
            _ => Err(parse_err()),
        }
    }
}

/// A result taken from a topological reduction argument rather than computed.
#[derive(Debug, Clone)]
pub struct PinnedResult {
    pub order: u64,
    pub result: Option<TensorElement>,
    pub citation: &'static str,
}

/// How the degree-3 integral generator of the universal cover is reached mod p.
#[derive(Debug, Clone)]
pub enum Z3Lift {
    /// A degree-3 generator pulling back to the integral generator.
    Algebraic { class: String },
    Pinned(PinnedResult),
    /// SU(n)/Z_k: the order comes from the Tor pushforward.
    Pushforward { n: u64, k: u64 },
}

#[derive(Debug)]
pub struct PrimeData {
    pub prime: u64,
    pub hopf: HopfAlgebra,
    pub rules: BocksteinRules,
    pub lift: Z3Lift,
}

impl PrimeData {
    pub fn presentation(&self) -> &Presentation {
        self.hopf.presentation()
    }

    /// φ* of the algebraic lift, if there is one.
    pub fn lift_image(&self) -> Result<Option<TensorElement>> {
        match &self.lift {
            Z3Lift::Algebraic { class } => {
                let x = self.presentation().generator(class)?;
                Ok(Some(self.hopf.phi_star(&x)?))
            }
            _ => Ok(None),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Pinned(String),
    TorFormula,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Computed => write!(f, "computed"),
            Provenance::Pinned(c) => write!(f, "pinned({c})"),
            Provenance::TorFormula => write!(f, "tor-formula"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeOrder {
    pub prime: u64,
    pub order: u64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L0Result {
    pub group: GroupId,
    pub value: u64,
    pub breakdown: Vec<PrimeOrder>,
}

impl L0Result {
    pub fn citations(&self) -> Vec<String> {
        self.breakdown
            .iter()
            .filter_map(|b| match &b.provenance {
                Provenance::Pinned(c) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCheck {
    pub admits: bool,
    pub l0: u64,
    pub level: u64,
    pub genus: u64,
    pub explanation: String,
}

const PIN_PU: &str = "block-diagonal SU(2) in SU(n) reduces the class to PU(2), where it is essential";
const PIN_PSP: &str = "diagonal Sp(1) in Sp(n) reduces the class to PU(2), where it is essential";
const PIN_SS: &str = "RP3 -> Ss(4n) is an isomorphism through degree 3, reducing to PU(2)";
const PIN_PO: &str = "pullback along the double cover Ss(4k) -> PO(4k) is nonzero";
const PIN_PE7: &str = "RP3 -> PE7 is an isomorphism through degree 3, reducing to PU(2)";

#[derive(Debug, Clone, Copy)]
pub struct Catalog {
    degree_cap: u32,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog { degree_cap: DEFAULT_DEGREE_CAP }
    }
}

/// Builder state shared by the family constructors.
struct Build {
    prime: u32,
    cap: u32,
    gens: Vec<GeneratorSpec>,
}

impl Build {
    fn new(prime: u64, cap: u32) -> Self {
        Build { prime: prime as u32, cap, gens: Vec::new() }
    }

    fn push(&mut self, g: GeneratorSpec) {
        if g.degree <= self.cap {
            self.gens.push(g);
        }
    }

    fn finish(self) -> Result<Presentation> {
        Ok(Presentation::new(self.prime, self.gens, self.cap)?)
    }
}

/// Accumulates reduced coproducts, silently dropping terms on absent generators.
struct Table<'a> {
    pres: &'a Presentation,
    table: CoproductTable,
}

impl<'a> Table<'a> {
    fn new(pres: &'a Presentation) -> Self {
        let mut table = CoproductTable::new();
        for g in pres.generators() {
            table.set(g.name.clone(), TensorElement::zero(pres.prime()));
        }
        Table { pres, table }
    }

    fn word(&self, word: &[(&str, u32)]) -> Result<Option<Element>> {
        if word.iter().any(|(n, _)| !self.pres.has_generator(n)) {
            return Ok(None);
        }
        Ok(Some(self.pres.normal_form(word)?))
    }

    /// Add c · left ⊗ right to the reduced coproduct of `name`.
    fn add(&mut self, name: &str, c: i64, left: &[(&str, u32)], right: &[(&str, u32)]) -> Result<()> {
        if !self.pres.has_generator(name) {
            return Ok(());
        }
        let c = zp::reduce(c, self.pres.prime());
        if c == 0 {
            return Ok(());
        }
        let (Some(l), Some(r)) = (self.word(left)?, self.word(right)?) else {
            return Ok(());
        };
        let term = self.pres.tensor(&[l, r]).scale(c);
        let mut entry = self.table.get(name).cloned().unwrap_or_else(|| TensorElement::zero(self.pres.prime()));
        entry.add_assign(&term);
        self.table.set(name, entry);
        Ok(())
    }

    fn finish(self) -> Result<HopfAlgebra> {
        Ok(HopfAlgebra::new(self.pres.clone(), &self.table)?)
    }
}

fn name(prefix: &str, i: u64) -> String {
    format!("{prefix}{i}")
}

impl Catalog {
    pub fn new(degree_cap: u32) -> Result<Self> {
        if degree_cap < 8 {
            return Err(CatalogError::DegreeCapTooSmall(degree_cap));
        }
        Ok(Catalog { degree_cap })
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    /// Presentation, coproduct table, Bockstein rules and lift descriptor of `group` at `p`.
    pub fn entry(&self, group: &GroupId, p: u64) -> Result<PrimeData> {
        if !group.relevant_primes().contains(&p) {
            return Err(CatalogError::IrrelevantPrime { group: group.to_string(), prime: p });
        }
        let cap = self.degree_cap;
        match *group {
            GroupId::PU { n } => unitary(n, n, p, cap),
            GroupId::SuModZk { n, k } => unitary(n, k, p, cap),
            GroupId::PSp { n } => symplectic(n, cap),
            GroupId::SO { n } => orthogonal(n, cap),
            GroupId::PO { n } => projective_orthogonal(2 * n, cap),
            GroupId::Ss { n } => semispin(4 * n, cap),
            GroupId::PE6 => pe6(cap),
            GroupId::PE7 => pe7(cap),
        }
    }

    /// Height bound for the Bockstein search.
    fn max_height(group: &GroupId, p: u64) -> u32 {
        zp::valuation(group.cover_center_order(), p) + 2
    }

    fn consistency(group: &GroupId, detail: String) -> CatalogError {
        CatalogError::Consistency { group: group.to_string(), detail }
    }

    /// Order of an arity-2 class of degree 3 via the Bockstein rules.
    fn bockstein_order(group: &GroupId, data: &PrimeData, target: &TensorElement) -> Result<u64> {
        let pres = data.presentation();
        let space = pres.tensor_basis(2, 2);
        let found = torsion::integral_order(pres, &data.rules, target, &space, Self::max_height(group, data.prime))?;
        let back = torsion::bockstein_apply(pres, &data.rules, &found.witness, found.height)?;
        if &back != target {
            return Err(Self::consistency(group, "Bockstein witness does not reproduce the target".into()));
        }
        Ok(found.order)
    }

    pub fn prime_order(&self, group: &GroupId, p: u64) -> Result<PrimeOrder> {
        let data = self.entry(group, p)?;
        match &data.lift {
            Z3Lift::Algebraic { .. } => {
                let image = data.lift_image()?.expect("algebraic lift");
                if !vanishes_on_wedge(&image) {
                    return Err(Self::consistency(group, "commutator pullback is nonzero on the wedge".into()));
                }
                let order = if image.is_zero() { 1 } else { Self::bockstein_order(group, &data, &image)? };
                Ok(PrimeOrder { prime: p, order, provenance: Provenance::Computed })
            }
            Z3Lift::Pinned(pin) => {
                if let Some(result) = &pin.result {
                    let order = Self::bockstein_order(group, &data, result)?;
                    if order != pin.order {
                        return Err(Self::consistency(
                            group,
                            format!("pinned order {} but the pinned class has order {order}", pin.order),
                        ));
                    }
                }
                Ok(PrimeOrder { prime: p, order: pin.order, provenance: Provenance::Pinned(pin.citation.into()) })
            }
            Z3Lift::Pushforward { n, k } => {
                let formula = torsion::pushforward_order_formula(*n, *k);
                let pipeline = torsion::tor_pushforward_order(*n, *k)?;
                if formula != pipeline {
                    return Err(Self::consistency(
                        group,
                        format!("Tor pipeline gives {pipeline}, closed form gives {formula}"),
                    ));
                }
                let order = p.pow(zp::valuation(formula, p));
                if let Some(algebraic) = self.unitary_cross_check(group, *n, *k, p)? {
                    if algebraic != order {
                        return Err(Self::consistency(
                            group,
                            format!("Bockstein route gives {algebraic} at p = {p}, Tor route gives {order}"),
                        ));
                    }
                }
                Ok(PrimeOrder { prime: p, order, provenance: Provenance::TorFormula })
            }
        }
    }

    /// Bockstein order of φ*(x3) for SU(n)/Z_k at p, where the mod-p algebra detects it:
    /// v_p(n) = v_p(k), and not the p = 2, v_2(k) = 1 case.
    fn unitary_cross_check(&self, group: &GroupId, n: u64, k: u64, p: u64) -> Result<Option<u64>> {
        let (r, s) = (zp::valuation(n, p), zp::valuation(k, p));
        if r != s || (p == 2 && s == 1) {
            return Ok(None);
        }
        let data = unitary(n, k, p, self.degree_cap)?;
        let x3 = data.presentation().generator("x3")?;
        let image = data.hopf.phi_star(&x3)?;
        if image.is_zero() {
            return Ok(Some(1));
        }
        Ok(Some(Self::bockstein_order(group, &data, &image)?))
    }

    pub fn l0(&self, group: &GroupId) -> Result<L0Result> {
        let mut breakdown = Vec::new();
        for p in group.relevant_primes() {
            breakdown.push(self.prime_order(group, p)?);
        }
        let orders: BTreeMap<u64, u64> = breakdown.iter().map(|b| (b.prime, b.order)).collect();
        Ok(L0Result { group: *group, value: torsion::assemble_l0(&orders), breakdown })
    }

    /// Whether the moduli space of flat bundles over a genus-`genus` surface
    /// admits a pre-quantization at `level`.
    pub fn check_level(&self, group: &GroupId, level: u64, genus: u64) -> Result<LevelCheck> {
        if level == 0 || genus == 0 {
            return Err(CatalogError::InvalidGroup("level and genus must be positive".into()));
        }
        let l0 = self.l0(group)?.value;
        let admits = level.is_multiple_of(l0);
        let verdict = if admits {
            format!("l0 = {l0} divides {level}")
        } else {
            format!("l0 = {l0} does not divide {level}")
        };
        let explanation = format!(
            "{verdict}; the genus ({genus}) does not enter, since the kernel for one handle is contained in the kernel for any number of handles"
        );
        Ok(LevelCheck { admits, l0, level, genus, explanation })
    }

    /// Every catalog group with parameters up to `n_max`, in a fixed order.
    pub fn groups(n_max: u64) -> Vec<GroupId> {
        let mut out = Vec::new();
        for n in 2..=n_max {
            out.push(GroupId::PU { n });
        }
        for n in 2..=n_max {
            for k in 2..n {
                if n % k == 0 {
                    out.push(GroupId::SuModZk { n, k });
                }
            }
        }
        out.extend((1..=n_max).map(|n| GroupId::PSp { n }));
        out.extend((7..=n_max).map(|n| GroupId::SO { n }));
        out.extend((4..=n_max).map(|n| GroupId::PO { n }));
        out.extend((2..=n_max).map(|n| GroupId::Ss { n }));
        out.push(GroupId::PE6);
        out.push(GroupId::PE7);
        out
    }

    pub fn table(&self, n_max: u64) -> Result<Vec<L0Result>> {
        if n_max < 2 {
            return Err(CatalogError::InvalidGroup("table needs n_max ≥ 2".into()));
        }
        let groups = Self::groups(n_max);
        let results: Vec<Result<L0Result>> = std::thread::scope(|scope| {
            let handles: Vec<_> = groups.iter().map(|g| scope.spawn(move || self.l0(g))).collect();
            handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
        });
        results.into_iter().collect()
    }
}

/// SU(n)/Z_k at a prime p dividing k (k = n is PU(n)).
fn unitary(n: u64, k: u64, p: u64, cap: u32) -> Result<PrimeData> {
    let r = zp::valuation(n, p);
    let s = zp::valuation(k, p);
    let q = p.pow(r);
    let linked = p == 2 && s == 1;
    let mut b = Build::new(p, cap);
    if linked {
        b.push(GeneratorSpec::square_linked("x1", 1, Some("y2")));
    } else {
        b.push(GeneratorSpec::exterior("x1", 1));
    }
    b.push(GeneratorSpec::truncated("y2", 2, q as u32));
    for i in 2..=n {
        if 2 * i - 1 != 2 * q - 1 {
            b.push(GeneratorSpec::exterior(name("x", 2 * i - 1), (2 * i - 1) as u32));
        }
    }
    let pres = b.finish()?;
    let mut t = Table::new(&pres);
    for i in 2..=n {
        let x = name("x", 2 * i - 1);
        if r == s {
            t.add(&x, 1, &[("x1", 1)], &[("y2", (i - 1) as u32)])?;
        }
        for j in 2..i {
            let c = zp::binomial(i - 1, j - 1, p as u32) as i64;
            t.add(&x, c, &[(&name("x", 2 * j - 1), 1)], &[("y2", (i - j) as u32)])?;
        }
    }
    let hopf = t.finish()?;
    let mut rules = BocksteinRules::new(&pres);
    let y2 = pres.generator("y2")?;
    if linked {
        rules.add(&pres, "x1", 1, y2)?;
        rules.add_zero(&pres, "y2", 1)?;
    } else {
        for j in 1..s {
            rules.add_zero(&pres, "x1", j)?;
        }
        rules.add(&pres, "x1", s, y2)?;
        for j in 1..=s {
            rules.add_zero(&pres, "y2", j)?;
        }
    }
    let lift = if k != n {
        Z3Lift::Pushforward { n, k }
    } else if p == 2 && r == 1 {
        let x1 = pres.generator("x1")?;
        let x1sq = pres.mul(&x1, &x1)?;
        let result = pres.tensor(&[x1.clone(), x1sq.clone()]).add(&pres.tensor(&[x1sq, x1]));
        Z3Lift::Pinned(PinnedResult { order: 2, result: Some(result), citation: PIN_PU })
    } else {
        Z3Lift::Algebraic { class: "x3".into() }
    };
    Ok(PrimeData { prime: p, hopf, rules, lift })
}

fn symplectic(n: u64, cap: u32) -> Result<PrimeData> {
    let r = zp::valuation(n, 2);
    let height = 1u64 << (r + 2);
    let mut b = Build::new(2, cap);
    b.push(GeneratorSpec::truncated("v1", 1, height as u32));
    for i in 0..n {
        let d = 4 * i + 3;
        if d != height - 1 {
            b.push(GeneratorSpec::exterior(name("b", d), d as u32));
        }
    }
    let pres = b.finish()?;
    let mut t = Table::new(&pres);
    for k in 1..n {
        let target = name("b", 4 * k + 3);
        for i in 0..k {
            let c = zp::binomial(k, i, 2) as i64;
            t.add(&target, c, &[(&name("b", 4 * i + 3), 1)], &[("v1", (4 * k - 4 * i) as u32)])?;
        }
    }
    let hopf = t.finish()?;
    let mut rules = BocksteinRules::new(&pres);
    let v1 = pres.generator("v1")?;
    rules.add(&pres, "v1", 1, pres.mul(&v1, &v1)?)?;
    let lift = if n.is_multiple_of(2) {
        Z3Lift::Algebraic { class: "b3".into() }
    } else {
        let v1sq = pres.mul(&v1, &v1)?;
        let result = pres.tensor(&[v1.clone(), v1sq.clone()]).add(&pres.tensor(&[v1sq, v1]));
        Z3Lift::Pinned(PinnedResult { order: 2, result: Some(result), citation: PIN_PSP })
    };
    Ok(PrimeData { prime: 2, hopf, rules, lift })
}

fn orthogonal(n: u64, cap: u32) -> Result<PrimeData> {
    let mut b = Build::new(2, cap);
    let top = (n - 1).min(cap as u64);
    for i in 1..=top {
        let square = (2 * i <= top).then(|| name("x", 2 * i));
        b.push(GeneratorSpec::square_linked(name("x", i), i as u32, square.as_deref()));
    }
    let pres = b.finish()?;
    let hopf = Table::new(&pres).finish()?;
    let mut rules = BocksteinRules::new(&pres);
    rules.add(&pres, "x1", 1, pres.generator("x2")?)?;
    rules.add_zero(&pres, "x2", 1)?;
    Ok(PrimeData { prime: 2, hopf, rules, lift: Z3Lift::Algebraic { class: "x3".into() } })
}

/// PO(m), m even.
fn projective_orthogonal(m: u64, cap: u32) -> Result<PrimeData> {
    let r = zp::valuation(m, 2);
    let height = 1u64 << r;
    let present = |i: u64| i >= 1 && i < m && i != height - 1 && i <= cap as u64;
    let mut b = Build::new(2, cap);
    b.push(GeneratorSpec::truncated("v1", 1, height as u32));
    for i in 1..m {
        if present(i) {
            let square = present(2 * i).then(|| name("u", 2 * i));
            b.push(GeneratorSpec::square_linked(name("u", i), i as u32, square.as_deref()));
        }
    }
    let pres = b.finish()?;
    let mut t = Table::new(&pres);
    for k in 2..m {
        for i in 1..k {
            let c = zp::binomial(k, i, 2) as i64;
            t.add(&name("u", k), c, &[(&name("u", i), 1)], &[("v1", (k - i) as u32)])?;
        }
    }
    let hopf = t.finish()?;
    let mut rules = BocksteinRules::new(&pres);
    let v1 = pres.generator("v1")?;
    let u2 = pres.generator("u2")?;
    let lift = if r == 1 {
        rules.add_zero(&pres, "v1", 1)?;
        rules.add(&pres, "v1", 2, u2)?;
        rules.add_zero(&pres, "u2", 1)?;
        rules.add_zero(&pres, "u2", 2)?;
        Z3Lift::Algebraic { class: "u3".into() }
    } else {
        rules.add(&pres, "v1", 1, pres.mul(&v1, &v1)?)?;
        rules.add(&pres, "u1", 1, u2)?;
        rules.add_zero(&pres, "u2", 1)?;
        if r == 2 {
            Z3Lift::Pinned(PinnedResult { order: 2, result: None, citation: PIN_PO })
        } else {
            Z3Lift::Algebraic { class: "u3".into() }
        }
    };
    Ok(PrimeData { prime: 2, hopf, rules, lift })
}

/// Ss(m), m ≡ 0 mod 4.
fn semispin(m: u64, cap: u32) -> Result<PrimeData> {
    let r = zp::valuation(m, 2);
    let height = 1u64 << r;
    let s = 64 - (m - 1).leading_zeros() as u64; // 2^(s-1) < m ≤ 2^s
    let excluded = |i: u64| i == height - 1 || i.is_power_of_two();
    let present = |i: u64| i > 0 && i < m && !excluded(i) && i <= cap as u64;
    let mut gens = vec![GeneratorSpec::truncated("y1", 1, height as u32)];
    for i in 1..m {
        if present(i) {
            let square = present(2 * i).then(|| name("x", 2 * i));
            gens.push(GeneratorSpec::square_linked(name("x", i), i as u32, square.as_deref()));
        }
    }
    let zd = 1u64 << (s - 1);
    gens.push(GeneratorSpec::square_linked(name("z", zd), zd as u32, None));
    gens.sort_by_key(|g| g.degree);
    let mut b = Build::new(2, cap);
    for g in gens {
        b.push(g);
    }
    let pres = b.finish()?;
    let mut t = Table::new(&pres);
    for j in 1..=m / 2 {
        let even = name("x", 2 * j);
        for k in 1..j {
            let c = zp::binomial(j, k, 2) as i64;
            t.add(&even, c, &[("y1", (2 * k) as u32)], &[(&name("x", 2 * j - 2 * k), 1)])?;
        }
        let odd = name("x", 2 * j - 1);
        t.add(&odd, 1, &[(&name("x", 2 * j - 2), 1)], &[("y1", 1)])?;
        for k in 1..j {
            let c = zp::binomial(j - 1, k, 2) as i64;
            t.add(&odd, c, &[("y1", (2 * k) as u32)], &[(&name("x", 2 * j - 2 * k - 1), 1)])?;
        }
    }
    let hopf = t.finish()?;
    let mut rules = BocksteinRules::new(&pres);
    let y1 = pres.generator("y1")?;
    let y1sq = pres.mul(&y1, &y1)?;
    rules.add(&pres, "y1", 1, y1sq.clone())?;
    let lift = if (m / 4).is_multiple_of(2) {
        Z3Lift::Algebraic { class: "x3".into() }
    } else {
        let result = pres.tensor(&[y1.clone(), y1sq.clone()]).add(&pres.tensor(&[y1sq, y1]));
        Z3Lift::Pinned(PinnedResult { order: 2, result: Some(result), citation: PIN_SS })
    };
    Ok(PrimeData { prime: 2, hopf, rules, lift })
}

fn pe6(cap: u32) -> Result<PrimeData> {
    let mut b = Build::new(3, cap);
    b.push(GeneratorSpec::exterior("x1", 1));
    b.push(GeneratorSpec::truncated("y2", 2, 9));
    b.push(GeneratorSpec::exterior("x3", 3));
    b.push(GeneratorSpec::exterior("x7", 7));
    b.push(GeneratorSpec::truncated("y8", 8, 3));
    for d in [9, 11, 15] {
        b.push(GeneratorSpec::exterior(name("x", d), d as u32));
    }
    let pres = b.finish()?;
    let mut t = Table::new(&pres);
    t.add("x3", 1, &[("y2", 1)], &[("x1", 1)])?;
    t.add("x7", 1, &[("y2", 3)], &[("x1", 1)])?;
    t.add("y8", 1, &[("y2", 3)], &[("y2", 1)])?;
    t.add("x9", 1, &[("y2", 1)], &[("x7", 1)])?;
    t.add("x9", -1, &[("y2", 3)], &[("x3", 1)])?;
    t.add("x9", 1, &[("y8", 1)], &[("x1", 1)])?;
    t.add("x9", 1, &[("y2", 4)], &[("x1", 1)])?;
    t.add("x11", 1, &[("y2", 1)], &[("x9", 1)])?;
    t.add("x11", -1, &[("y2", 2)], &[("x7", 1)])?;
    t.add("x11", 1, &[("y8", 1)], &[("x3", 1)])?;
    t.add("x11", -1, &[("y2", 4)], &[("x3", 1)])?;
    t.add("x11", 1, &[("y8", 1), ("y2", 1)], &[("x1", 1)])?;
    t.add("x11", -1, &[("y2", 5)], &[("x1", 1)])?;
    t.add("x15", 1, &[("y2", 3)], &[("x9", 1)])?;
    t.add("x15", 1, &[("y8", 1)], &[("x7", 1)])?;
    t.add("x15", 1, &[("y2", 6)], &[("x3", 1)])?;
    t.add("x15", 1, &[("y8", 1), ("y2", 3)], &[("x1", 1)])?;
    let hopf = t.finish()?;
    let mut rules = BocksteinRules::new(&pres);
    rules.add(&pres, "x1", 1, pres.generator("y2")?)?;
    rules.add_zero(&pres, "y2", 1)?;
    Ok(PrimeData { prime: 3, hopf, rules, lift: Z3Lift::Algebraic { class: "x3".into() } })
}

fn pe7(cap: u32) -> Result<PrimeData> {
    let mut b = Build::new(2, cap);
    b.push(GeneratorSpec::truncated("x1", 1, 4));
    b.push(GeneratorSpec::truncated("x5", 5, 4));
    b.push(GeneratorSpec::exterior("x6", 6));
    b.push(GeneratorSpec::truncated("x9", 9, 4));
    for d in [15, 17, 23, 27] {
        b.push(GeneratorSpec::exterior(name("x", d), d as u32));
    }
    let pres = b.finish()?;
    let mut t = Table::new(&pres);
    t.add("x15", 1, &[("x5", 2)], &[("x5", 1)])?;
    t.add("x23", 1, &[("x9", 2)], &[("x5", 1)])?;
    t.add("x23", 1, &[("x6", 1)], &[("x17", 1)])?;
    t.add("x27", 1, &[("x9", 2)], &[("x9", 1)])?;
    t.add("x27", 1, &[("x5", 2)], &[("x17", 1)])?;
    let hopf = t.finish()?;
    let mut rules = BocksteinRules::new(&pres);
    let x1 = pres.generator("x1")?;
    let x1sq = pres.mul(&x1, &x1)?;
    rules.add(&pres, "x1", 1, x1sq.clone())?;
    let result = pres.tensor(&[x1.clone(), x1sq.clone()]).add(&pres.tensor(&[x1sq, x1]));
    let lift = Z3Lift::Pinned(PinnedResult { order: 2, result: Some(result), citation: PIN_PE7 });
    Ok(PrimeData { prime: 2, hopf, rules, lift })
}
