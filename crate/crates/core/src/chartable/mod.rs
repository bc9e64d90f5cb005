//! Character tables of the q = 2 schemes and the identities they satisfy.

pub mod fusion;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::eisenstein::Eisenstein;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::relation::Layout;
use crate::scheme::AdjacencyMatrix;
use crate::unitary::isotropic_count;

pub use fusion::{canonical_fusion, canonical_fusions, fuse, verify_fusion_on_relations, Fusion};

/// Largest |Φ| for which primitive idempotents are built.
pub const IDEMPOTENT_BUDGET: usize = 27;

/// First eigenmatrix P (rows: eigenspaces, columns: relations) with
/// multiplicities and valencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    n: u32,
    order: BigInt,
    p: Matrix<Eisenstein>,
    m: Vec<BigInt>,
    k: Vec<BigInt>,
    conj: Vec<usize>,
}

impl CharTable {
    /// Assembles a table; the valencies are read off row 0 and `m` must
    /// agree with the multiplicities implied by P.
    pub fn from_parts(n: u32, order: BigInt, p: Matrix<Eisenstein>, m: Vec<BigInt>, conj: Vec<usize>) -> Result<Self> {
        let dim = p.rows();
        if p.cols() != dim || m.len() != dim || conj.len() != dim {
            return Err(Error::Invariant("character table dimensions disagree".into()));
        }
        let k = (0..dim)
            .map(|j| {
                p[(0, j)]
                    .to_rational()
                    .filter(|r| r.is_integer() && r.is_positive())
                    .map(|r| r.to_integer())
                    .ok_or_else(|| Error::Invariant(format!("row 0 entry {j} is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        let implied = multiplicities(&p, &k, &order)?;
        if implied != m {
            return Err(Error::Invariant(format!(
                "multiplicities {} disagree with those implied by P, {}",
                join(&m),
                join(&implied)
            )));
        }
        Ok(CharTable { n, order, p, m, k, conj })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of rows (= number of relations).
    pub fn dim(&self) -> usize {
        self.k.len()
    }

    /// |Φ(n, 2)|.
    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn matrix(&self) -> &Matrix<Eisenstein> {
        &self.p
    }

    /// p_j(i).
    pub fn entry(&self, i: usize, j: usize) -> &Eisenstein {
        &self.p[(i, j)]
    }

    pub fn row(&self, i: usize) -> &[Eisenstein] {
        self.p.row(i)
    }

    pub fn multiplicities(&self) -> &[BigInt] {
        &self.m
    }

    pub fn valencies(&self) -> &[BigInt] {
        &self.k
    }

    /// Converse map on the relations (columns).
    pub fn conj_map(&self) -> &[usize] {
        &self.conj
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn neg2(e: u32) -> BigInt {
    BigInt::from(-2).pow(e)
}

fn int(v: &BigInt) -> Eisenstein {
    Eisenstein::from_int(v.clone())
}

/// Columns 0..6 of one of the three row shapes: (1,1,1,c,c,c),
/// (1,ω,ω̄,c,cω̄,cω) or (1,ω̄,ω,c,cω,cω̄).
fn shaped_row(shape: u8, c: &BigInt) -> Vec<Eisenstein> {
    let (w, wb) = (Eisenstein::omega(), Eisenstein::omega_bar());
    let one = Eisenstein::one();
    let c = int(c);
    match shape {
        0 => vec![one.clone(), one.clone(), one, c.clone(), c.clone(), c],
        1 => vec![one, w.clone(), wb.clone(), c.clone(), &c * &wb, &c * &w],
        _ => vec![one, wb.clone(), w.clone(), c.clone(), &c * &w, &c * &wb],
    }
}

/// The character table of the scheme on Φ(n, 2), rows in printed order.
pub fn char_table_closed(n: u32) -> Result<CharTable> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let b = BigInt::from;
    let rows: Vec<Vec<Eisenstein>> = match n {
        2 => [(0, 2), (1, 2), (2, 2), (0, -1), (1, -1), (2, -1)]
            .iter()
            .map(|&(s, c)| shaped_row(s, &b(c)))
            .collect(),
        3 => [(0, 8), (1, -4), (2, -4), (0, -1), (1, 2), (2, 2)]
            .iter()
            .map(|&(s, c)| shaped_row(s, &b(c)))
            .collect(),
        _ => {
            let big = BigInt::from(2).pow(2 * n - 3);
            let c1 = -neg2(n - 1);
            let c2 = -neg2(n - 2);
            let c3 = -neg2(n - 3);
            let zero = BigInt::zero();
            let last0 = &big - neg2(n - 1) - 4;
            let last3 = 3 * neg2(n - 2) - 3;
            let last6 = 3 * neg2(n - 3) - 3;
            [
                (0, &big, &last0),
                (1, &c1, &zero),
                (2, &c1, &zero),
                (0, &c2, &last3),
                (1, &c2, &zero),
                (2, &c2, &zero),
                (0, &c3, &last6),
            ]
            .iter()
            .map(|&(s, c, last)| {
                let mut row = shaped_row(s, c);
                row.push(int(last));
                row
            })
            .collect()
        }
    };
    let dim = rows.len();
    let p = Matrix::from_fn(dim, dim, |i, j| rows[i][j].clone());
    let order = isotropic_count(n, 2);
    let k: Vec<BigInt> = (0..dim).map(|j| p[(0, j)].to_rational().unwrap().to_integer()).collect();
    let m = multiplicities(&p, &k, &order)?;
    if n >= 4 && m != multiplicities_formula(n)? {
        return Err(Error::Invariant(format!(
            "multiplicities {} disagree with the closed forms {}",
            join(&m),
            join(&multiplicities_formula(n)?)
        )));
    }
    let layout = Layout::new(n, 2);
    let conj = (0..dim).map(|l| layout.converse(l)).collect();
    CharTable::from_parts(n, order, p, m, conj)
}

/// m_i = |Φ| (Σ_j |p_j(i)|²/k_j)⁻¹, required to be a positive integer.
pub fn multiplicities(p: &Matrix<Eisenstein>, k: &[BigInt], order: &BigInt) -> Result<Vec<BigInt>> {
    let order = BigRational::from_integer(order.clone());
    (0..p.rows())
        .map(|i| {
            let denom: BigRational = (0..p.cols())
                .map(|j| p[(i, j)].abs_square() / BigRational::from_integer(k[j].clone()))
                .fold(BigRational::zero(), |a, b| a + b);
            if denom.is_zero() {
                return Err(Error::BadMultiplicity {
                    index: i,
                    value: "∞".into(),
                });
            }
            let m = &order / denom;
            if m.is_integer() && m.is_positive() {
                Ok(m.to_integer())
            } else {
                Err(Error::BadMultiplicity {
                    index: i,
                    value: m.to_string(),
                })
            }
        })
        .collect()
}

/// Closed-form multiplicities for n ≥ 4.
pub fn multiplicities_formula(n: u32) -> Result<Vec<BigInt>> {
    if n < 4 {
        return Err(Error::Invariant(format!("closed-form multiplicities need n ≥ 4, got {n}")));
    }
    // f(e) = 2^e − (−1)^e
    let f = |e: u32| BigInt::from(2).pow(e) - BigInt::from(-1).pow(e);
    let nine = BigInt::from(9);
    let m1: BigInt = f(n) * f(n - 1) / &nine;
    let m3: BigInt = 4 * f(n) * f(n - 3) / &nine;
    let m4: BigInt = 2 * f(n) * f(n - 1) / &nine;
    let m6: BigInt = 8 * f(n - 1) * f(n - 2) / &nine;
    Ok(vec![BigInt::one(), m1.clone(), m1, m3, m4.clone(), m4, m6])
}

fn rational(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

fn fail(check: &'static str, at: String) -> Error {
    Error::IdentityFailed { check, at }
}

/// Σ_j p_j(i₁) conj(p_j(i₂)) / k_j = δ |Φ|/m_{i₁} and
/// Σ_i m_i p_{j₁}(i) conj(p_{j₂}(i)) = δ |Φ| k_{j₁}.
pub fn verify_orthogonality(ct: &CharTable) -> Result<()> {
    let d = ct.dim();
    let order = rational(&ct.order);
    for i1 in 0..d {
        for i2 in 0..d {
            let sum: Eisenstein = (0..d)
                .map(|j| (ct.entry(i1, j) * &ct.entry(i2, j).conj()).scale(&rational(&ct.k[j]).recip()))
                .sum();
            let want = if i1 == i2 { &order / rational(&ct.m[i1]) } else { BigRational::zero() };
            if sum != Eisenstein::from_rational(want) {
                return Err(fail("row orthogonality", format!("rows ({i1},{i2})")));
            }
        }
    }
    for j1 in 0..d {
        for j2 in 0..d {
            let sum: Eisenstein = (0..d)
                .map(|i| (ct.entry(i, j1) * &ct.entry(i, j2).conj()).scale(&rational(&ct.m[i])))
                .sum();
            let want = if j1 == j2 { &ct.order * &ct.k[j1] } else { BigInt::zero() };
            if sum != Eisenstein::from_int(want) {
                return Err(fail("column orthogonality", format!("columns ({j1},{j2})")));
            }
        }
    }
    Ok(())
}

fn check_tensor(ct: &CharTable, tensor: &[u64]) -> Result<usize> {
    let d = ct.dim();
    if tensor.len() != d * d * d {
        return Err(Error::Invariant(format!(
            "tensor of {} entries does not match a table of dimension {d}",
            tensor.len()
        )));
    }
    Ok(d)
}

/// p_i(h) p_j(h) = Σ_l p_{ij}^l p_l(h) for all rows h and all i, j;
/// `tensor` is p[l][i][j] in row-major order.
pub fn verify_homomorphism(ct: &CharTable, tensor: &[u64]) -> Result<()> {
    let d = check_tensor(ct, tensor)?;
    for h in 0..d {
        for i in 0..d {
            for j in 0..d {
                let lhs = ct.entry(h, i) * ct.entry(h, j);
                let rhs: Eisenstein = (0..d)
                    .filter(|&l| tensor[(l * d + i) * d + j] != 0)
                    .map(|l| ct.entry(h, l).scale(&rational(&BigInt::from(tensor[(l * d + i) * d + j]))))
                    .sum();
                if lhs != rhs {
                    return Err(fail("homomorphism", format!("row {h}, (i,j) = ({i},{j})")));
                }
            }
        }
    }
    Ok(())
}

/// p_{ij}^h = (1/(|Φ| k_h)) Σ_l p_i(l) p_j(l) conj(p_h(l)) m_l.
pub fn reconstruct_intersection(ct: &CharTable, h: usize, i: usize, j: usize) -> Eisenstein {
    let sum: Eisenstein = (0..ct.dim())
        .map(|l| (&(ct.entry(l, i) * ct.entry(l, j)) * &ct.entry(l, h).conj()).scale(&rational(&ct.m[l])))
        .sum();
    sum.scale(&rational(&(&ct.order * &ct.k[h])).recip())
}

/// Every reconstructed p_{ij}^h equals the tensor entry.
pub fn verify_reconstruction(ct: &CharTable, tensor: &[u64]) -> Result<()> {
    let d = check_tensor(ct, tensor)?;
    for h in 0..d {
        for i in 0..d {
            for j in 0..d {
                if reconstruct_intersection(ct, h, i, j) != Eisenstein::from_int(tensor[(h * d + i) * d + j]) {
                    return Err(fail("reconstruction", format!("(h,i,j) = ({h},{i},{j})")));
                }
            }
        }
    }
    Ok(())
}

/// Q with Q[i][j] = q_j(i) = m_j conj(p_i(j)) / k_i.
pub fn second_eigenmatrix(ct: &CharTable) -> Matrix<Eisenstein> {
    let d = ct.dim();
    Matrix::from_fn(d, d, |i, j| {
        ct.entry(j, i)
            .conj()
            .scale(&(rational(&ct.m[j]) / rational(&ct.k[i])))
    })
}

/// PQ = QP = |Φ| I.
pub fn verify_second_eigenmatrix(ct: &CharTable) -> Result<()> {
    let q = second_eigenmatrix(ct);
    let target = Matrix::identity(ct.dim()).map(|e: &Eisenstein| e.scale(&rational(&ct.order)));
    if &ct.p * &q != target {
        return Err(fail("PQ = |Φ|I", "product".into()));
    }
    if &q * &ct.p != target {
        return Err(fail("QP = |Φ|I", "product".into()));
    }
    Ok(())
}

/// |p_j(i)|² ≤ k_j² for every entry.
pub fn verify_eigenvalue_bound(ct: &CharTable) -> Result<()> {
    for i in 0..ct.dim() {
        for j in 0..ct.dim() {
            let k = rational(&ct.k[j]);
            if ct.entry(i, j).abs_square() > &k * &k {
                return Err(fail("eigenvalue bound", format!("entry ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// For each column j, ∏ over the distinct values v of column j of
/// (B_j − vI) vanishes, with (B_j)[a][b] = p_{ja}^b.
pub fn verify_minimal_polynomials(ct: &CharTable, tensor: &[u64]) -> Result<()> {
    let d = check_tensor(ct, tensor)?;
    for j in 0..d {
        let b = Matrix::from_fn(d, d, |a, c| Eisenstein::from_int(tensor[(c * d + j) * d + a]));
        let mut values: Vec<&Eisenstein> = Vec::new();
        for i in 0..d {
            if !values.contains(&ct.entry(i, j)) {
                values.push(ct.entry(i, j));
            }
        }
        let mut prod = Matrix::<Eisenstein>::identity(d);
        for v in values {
            let shifted = &b - &Matrix::identity(d).map(|e: &Eisenstein| e * v);
            prod = &prod * &shifted;
        }
        if !prod.is_zero() {
            return Err(fail("minimal polynomial", format!("column {j}")));
        }
    }
    Ok(())
}

/// E_i = (1/|Φ|) Σ_j q_i(j) A_j for small schemes.
pub fn primitive_idempotents(ct: &CharTable, adj: &[AdjacencyMatrix]) -> Result<Vec<Matrix<Eisenstein>>> {
    let size = adj.first().map_or(0, AdjacencyMatrix::size);
    if size > IDEMPOTENT_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "primitive idempotents",
            size: size as u128,
            limit: IDEMPOTENT_BUDGET as u128,
        });
    }
    if adj.len() != ct.dim() {
        return Err(Error::Invariant("adjacency matrices do not match the table".into()));
    }
    let q = second_eigenmatrix(ct);
    let inv = rational(&ct.order).recip();
    Ok((0..ct.dim())
        .map(|i| {
            Matrix::from_fn(size, size, |x, y| {
                let j = (0..adj.len()).find(|&j| adj[j].entries[(x, y)] == 1).unwrap_or(0);
                q[(j, i)].scale(&inv)
            })
        })
        .collect())
}

/// E_i² = E_i, E_iE_j = 0 for i ≠ j, tr E_i = m_i and ΣE_i = I.
pub fn verify_idempotents(ct: &CharTable, adj: &[AdjacencyMatrix]) -> Result<()> {
    let es = primitive_idempotents(ct, adj)?;
    let size = adj[0].size();
    for (i, e) in es.iter().enumerate() {
        for (j, f) in es.iter().enumerate() {
            let prod = e * f;
            let ok = if i == j { prod == *e } else { prod.is_zero() };
            if !ok {
                return Err(fail("idempotent product", format!("(E_{i},E_{j})")));
            }
        }
        if e.trace() != Eisenstein::from_int(ct.m[i].clone()) {
            return Err(fail("idempotent rank", format!("E_{i}")));
        }
    }
    let mut sum = Matrix::<Eisenstein>::zeros(size, size);
    for e in &es {
        sum = &sum + e;
    }
    if sum != Matrix::identity(size) {
        return Err(fail("idempotent sum", "ΣE_i".into()));
    }
    Ok(())
}

/// Orthogonality, homomorphism, reconstruction, PQ = |Φ|I, the eigenvalue
/// bound and minimal polynomials; returns the names of the checks run.
pub fn verify_identities(ct: &CharTable, tensor: &[u64]) -> Result<Vec<&'static str>> {
    verify_orthogonality(ct)?;
    verify_homomorphism(ct, tensor)?;
    verify_reconstruction(ct, tensor)?;
    verify_second_eigenmatrix(ct)?;
    verify_eigenvalue_bound(ct)?;
    verify_minimal_polynomials(ct, tensor)?;
    Ok(vec![
        "orthogonality",
        "homomorphism",
        "reconstruction",
        "PQ = |Φ|I",
        "eigenvalue bound",
        "minimal polynomials",
    ])
}
