//! Alcove combinatorics for SU(n): the fundamental alcove, the action of the
//! center on it, conjugacy-class integrality, and the module of degree-2
//! classes of the full flag manifold.

use std::fmt;

use num_rational::Ratio;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlcoveError {
    #[error("coordinates sum to {0}, not 0")]
    NotTraceZero(Rational),
    #[error("point {0} is not in the fundamental alcove")]
    NotInAlcove(String),
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("rank parameter n = {0} is below 2")]
    RankTooSmall(usize),
    #[error("level must be positive")]
    ZeroLevel,
    #[error("alcove reduction did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}

type Result<T> = std::result::Result<T, AlcoveError>;

/// A point of the Cartan subalgebra of su(n): rational coordinates summing to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanPoint {
    coords: Vec<Rational>,
}

impl CartanPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(AlcoveError::RankTooSmall(coords.len()));
        }
        let sum: Rational = coords.iter().sum();
        if sum != Rational::from_integer(0) {
            return Err(AlcoveError::NotTraceZero(sum));
        }
        Ok(CartanPoint { coords })
    }

    pub fn from_fractions(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, b)| Rational::new(a, b)).collect())
    }

    pub fn zero(n: usize) -> Self {
        CartanPoint { coords: vec![Rational::from_integer(0); n] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn add(&self, other: &CartanPoint) -> CartanPoint {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        CartanPoint { coords }
    }

    pub fn sub(&self, other: &CartanPoint) -> CartanPoint {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        CartanPoint { coords }
    }

    pub fn scale(&self, k: Rational) -> CartanPoint {
        CartanPoint { coords: self.coords.iter().map(|a| a * k).collect() }
    }

    /// Standard inner product.
    pub fn dot(&self, other: &CartanPoint) -> Rational {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    /// Pairing with the simple root e_i - e_{i+1} (0-based i).
    pub fn simple_pairing(&self, i: usize) -> Rational {
        self.coords[i] - self.coords[i + 1]
    }

    fn l1_norm(&self) -> Rational {
        self.coords.iter().map(|a| if *a < Rational::from_integer(0) { -a } else { *a }).sum()
    }
}

impl fmt::Display for CartanPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Parse `p/q` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = || AlcoveError::Parse(text.to_string());
    match text.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| err())?;
            let b: i64 = b.trim().parse().map_err(|_| err())?;
            if b == 0 {
                return Err(err());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(text.trim().parse().map_err(|_| err())?)),
    }
}

pub fn parse_point(text: &str, n: usize) -> Result<CartanPoint> {
    let coords = text.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>()?;
    if coords.len() != n {
        return Err(AlcoveError::WrongLength { expected: n, got: coords.len() });
    }
    CartanPoint::new(coords)
}

/// One point per non-empty line; `#` starts a comment.
pub fn parse_classes(text: &str, n: usize) -> Result<Vec<CartanPoint>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_point(l, n))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlcoveData {
    pub n: usize,
    pub vertices: Vec<CartanPoint>,
    pub barycenter: CartanPoint,
}

/// Vertex v_k: (n-k)/n on the first k coordinates, -k/n on the rest.
pub fn vertex(n: usize, k: usize) -> CartanPoint {
    let k = k % n;
    let coords = (0..n)
        .map(|i| {
            if i < k {
                Rational::new((n - k) as i64, n as i64)
            } else {
                Rational::new(-(k as i64), n as i64)
            }
        })
        .collect();
    CartanPoint { coords }
}

pub fn alcove_vertices(n: usize) -> Result<AlcoveData> {
    if n < 2 {
        return Err(AlcoveError::RankTooSmall(n));
    }
    let vertices: Vec<CartanPoint> = (0..n).map(|k| vertex(n, k)).collect();
    let sum = vertices.iter().fold(CartanPoint::zero(n), |acc, v| acc.add(v));
    let barycenter = sum.scale(Rational::new(1, n as i64));
    Ok(AlcoveData { n, vertices, barycenter })
}

/// ζ₀ = (1/2n)(n-1, n-3, ..., -(n-1)).
pub fn barycenter(n: usize) -> CartanPoint {
    let coords = (0..n)
        .map(|i| Rational::new(n as i64 - 1 - 2 * i as i64, 2 * n as i64))
        .collect();
    CartanPoint { coords }
}

pub fn in_alcove(x: &CartanPoint) -> bool {
    let c = &x.coords;
    let n = c.len();
    c.windows(2).all(|w| w[0] >= w[1]) && c[0] - c[n - 1] <= Rational::from_integer(1)
}

fn require_alcove(x: &CartanPoint) -> Result<()> {
    if in_alcove(x) {
        Ok(())
    } else {
        Err(AlcoveError::NotInAlcove(x.to_string()))
    }
}

/// An alcove representative together with the affine Weyl element reaching it:
/// `point[i] = x[permutation[i]] + translation[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub point: CartanPoint,
    pub permutation: Vec<usize>,
    pub translation: Vec<i64>,
}

/// Move `x` into the fundamental alcove by sorting and translating by the coroot e_n - e_1.
pub fn alcove_reduce_traced(x: &CartanPoint) -> Result<Reduction> {
    let n = x.rank();
    let norm = x.l1_norm();
    let limit = 10 * n * (1 + norm.ceil().to_integer().max(0) as usize);
    let mut slots: Vec<(Rational, usize, i64)> =
        x.coords.iter().enumerate().map(|(i, &c)| (c, i, 0)).collect();
    let one = Rational::from_integer(1);
    for _ in 0..limit {
        slots.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        if slots[0].0 - slots[n - 1].0 <= one {
            let point = CartanPoint { coords: slots.iter().map(|s| s.0).collect() };
            let permutation = slots.iter().map(|s| s.1).collect();
            let translation = slots.iter().map(|s| s.2).collect();
            return Ok(Reduction { point, permutation, translation });
        }
        slots[0].0 -= one;
        slots[0].2 -= 1;
        slots[n - 1].0 += one;
        slots[n - 1].2 += 1;
    }
    Err(AlcoveError::NonTermination(limit))
}

pub fn alcove_reduce(x: &CartanPoint) -> Result<CartanPoint> {
    Ok(alcove_reduce_traced(x)?.point)
}

/// Action of the j-th power of the central generator on the alcove.
pub fn center_action(j: i64, x: &CartanPoint) -> Result<CartanPoint> {
    require_alcove(x)?;
    let n = x.rank();
    let j = j.rem_euclid(n as i64);
    let shift = vertex(n, 1).scale(Rational::from_integer(j));
    alcove_reduce(&x.add(&shift))
}

/// Integer coordinates summing to zero.
pub fn is_coroot_lattice(x: &CartanPoint) -> bool {
    x.coords.iter().all(Ratio::is_integer)
}

/// Whether the conjugacy class of exp(ζ) carries a pre-quantization at level k:
/// every pairing of kζ with a simple root is an integer.
pub fn conjclass_preq_check(zeta: &CartanPoint, k: u64) -> Result<bool> {
    require_alcove(zeta)?;
    if k == 0 {
        return Err(AlcoveError::ZeroLevel);
    }
    let k = Rational::from_integer(k as i64);
    Ok((0..zeta.rank() - 1).all(|i| (zeta.simple_pairing(i) * k).is_integer()))
}

/// Dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors d_1 | d_2 | ..., all positive.
    pub invariants: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn kernel_rank(&self) -> usize {
        self.cols - self.rank()
    }

    /// Orders of the finite cyclic summands of the cokernel (factors 1 dropped).
    pub fn cokernel_torsion(&self) -> Vec<i64> {
        self.invariants.iter().copied().filter(|&d| d != 1).collect()
    }

    pub fn cokernel_free_rank(&self) -> usize {
        self.rows - self.rank()
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_b -= f * row_a
    fn row_op(&mut self, a: usize, b: usize, f: i64) {
        for j in 0..self.cols {
            let v = self.get(a, j);
            *self.at(b, j) -= f * v;
        }
    }

    fn col_op(&mut self, a: usize, b: usize, f: i64) {
        for i in 0..self.rows {
            let v = self.get(i, a);
            *self.at(i, b) -= f * v;
        }
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        let mut m = self.clone();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < m.rows.min(m.cols) {
            // smallest nonzero entry in the remaining block as pivot
            let pivot = (t..m.rows)
                .flat_map(|i| (t..m.cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m.get(i, j) != 0)
                .min_by_key(|&(i, j)| m.get(i, j).abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            loop {
                let p = m.get(t, t);
                let mut clean = true;
                for i in t + 1..m.rows {
                    let q = m.get(i, t).div_euclid(p);
                    m.row_op(t, i, q);
                    if m.get(i, t) != 0 {
                        clean = false;
                    }
                }
                for j in t + 1..m.cols {
                    let q = m.get(t, j).div_euclid(p);
                    m.col_op(t, j, q);
                    if m.get(t, j) != 0 {
                        clean = false;
                    }
                }
                if !clean {
                    let (bi, bj) = (t..m.rows)
                        .map(|i| (i, t))
                        .chain((t..m.cols).map(|j| (t, j)))
                        .filter(|&(i, j)| m.get(i, j) != 0)
                        .min_by_key(|&(i, j)| m.get(i, j).abs())
                        .expect("nonzero pivot row or column");
                    m.swap_rows(t, bi);
                    m.swap_cols(t, bj);
                    continue;
                }
                // the pivot must divide the rest of the block
                let p = m.get(t, t);
                let bad = (t + 1..m.rows)
                    .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m.get(i, j) % p != 0);
                match bad {
                    Some((i, _)) => {
                        m.row_op(i, t, -1);
                    }
                    None => break,
                }
            }
            diag.push(m.get(t, t).abs());
            t += 1;
        }
        SmithForm { invariants: diag, rows: self.rows, cols: self.cols }
    }
}

/// Matrix of σ - 1 on degree-2 classes of SU(n)/T in the basis t_1..t_{n-1},
/// where σ cycles t_1 → t_2 → ... → t_n and t_n = -(t_1 + ... + t_{n-1}).
pub fn flag_sigma_matrix(n: usize) -> Result<IntMatrix> {
    if n < 2 {
        return Err(AlcoveError::RankTooSmall(n));
    }
    let d = n - 1;
    let mut data = vec![0i64; d * d];
    for j in 0..d {
        if j + 1 < d {
            data[(j + 1) * d + j] += 1;
        } else {
            for i in 0..d {
                data[i * d + j] -= 1;
            }
        }
        data[j * d + j] -= 1;
    }
    Ok(IntMatrix::new(d, d, data))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// The necessary condition holds but no known sufficient condition applies.
    Open,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "YES"),
            Verdict::No => write!(f, "NO"),
            Verdict::Open => write!(f, "OPEN"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedVerdict {
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

/// Pre-quantization of the moduli space of flat PU(n)-bundles on a surface with
/// marked points labelled by the given conjugacy classes, at level k.
pub fn marked_points_check(n: usize, k: u64, classes: &[CartanPoint]) -> Result<MarkedVerdict> {
    if n < 2 {
        return Err(AlcoveError::RankTooSmall(n));
    }
    if k == 0 {
        return Err(AlcoveError::ZeroLevel);
    }
    for c in classes {
        if c.rank() != n {
            return Err(AlcoveError::WrongLength { expected: n, got: c.rank() });
        }
        require_alcove(c)?;
    }
    let zeta0 = barycenter(n);
    let mut verdicts = Vec::new();
    let mut reasons = Vec::new();
    let mut core = 0;
    for c in classes {
        if *c == zeta0 {
            core += 1;
            continue;
        }
        let ok = conjclass_preq_check(c, k)?;
        reasons.push(format!(
            "class {c}: level {k} {} integral on the simple roots",
            if ok { "is" } else { "is not" }
        ));
        verdicts.push(if ok { Verdict::Yes } else { Verdict::No });
    }
    if core > 0 {
        let nn = n as u64;
        let (v, why) = if n == 2 {
            if k.is_multiple_of(2) {
                (Verdict::Yes, "n = 2: level is even".to_string())
            } else {
                (Verdict::No, "n = 2: level is odd".to_string())
            }
        } else if n % 2 == 1 {
            if k.is_multiple_of(nn) {
                (Verdict::Yes, format!("n = {n} is odd and divides {k}"))
            } else {
                (Verdict::No, format!("n = {n} is odd and does not divide {k}"))
            }
        } else if !k.is_multiple_of(nn) {
            (Verdict::No, format!("n = {n} does not divide {k}"))
        } else if k.is_multiple_of(2 * nn) {
            (Verdict::Yes, format!("2n = {} divides {k}", 2 * nn))
        } else {
            (
                Verdict::Open,
                format!("n = {n} divides {k} but 2n = {} does not; sufficiency is open", 2 * nn),
            )
        };
        reasons.push(format!("{core} barycenter class(es): {why}"));
        verdicts.push(v);
    }
    if verdicts.is_empty() {
        reasons.push("no marked points".into());
    }
    let verdict = if verdicts.contains(&Verdict::No) {
        Verdict::No
    } else if verdicts.iter().all(|&v| v == Verdict::Yes) {
        Verdict::Yes
    } else {
        Verdict::Open
    };
    Ok(MarkedVerdict { verdict, reasons })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), Rational::new(-1, 2));
        assert_eq!(parse_rational("2").unwrap(), Rational::from_integer(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn classes_file() {
        let text = "# two classes\n1/2 -1/2\n\n0 0  # origin\n";
        let c = parse_classes(text, 2).unwrap();
        assert_eq!(c.len(), 2);
        assert!(matches!(parse_classes("1 1", 2), Err(AlcoveError::NotTraceZero(_))));
        assert!(matches!(parse_classes("1 -1 0", 2), Err(AlcoveError::WrongLength { .. })));
    }

    #[test]
    fn smith_small() {
        let m = IntMatrix::new(2, 2, vec![2, 4, 6, 8]);
        assert_eq!(m.smith_normal_form().invariants, vec![2, 4]);
        let m = IntMatrix::new(2, 3, vec![0, 0, 0, 0, 0, 0]);
        let s = m.smith_normal_form();
        assert_eq!(s.rank(), 0);
        assert_eq!(s.kernel_rank(), 3);
    }
}
