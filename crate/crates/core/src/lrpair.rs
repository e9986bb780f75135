//! Recognition and analysis of LR pairs: a pair (A, B) of Nil maps that
//! lower and raise a common decomposition of the underlying space.
//!
//! Recognition follows the flag characterization: A and B are Nil, B raises
//! the flag of images of A, and A raises the flag of images of B. On
//! success the decomposition, parameter sequence, idempotents, canonical
//! bases, inverter, reflector, and projector are all available.

use crate::field::{FieldSpec, Scalar};
use crate::linalg::{nullspace, BasisList, Matrix};

/// Why a candidate pair was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRejection {
    NotNilA,
    NotNilB,
    FlagNotRaised,
    SizeMismatch,
    MixedFields,
}

impl std::fmt::Display for PairRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PairRejection::NotNilA => "NotNilA",
            PairRejection::NotNilB => "NotNilB",
            PairRejection::FlagNotRaised => "FlagNotRaised",
            PairRejection::SizeMismatch => "SizeMismatch",
            PairRejection::MixedFields => "MixedFields",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PairOpError {
    #[error("operation requires an even diameter")]
    OddDiameter,
}

/// The four canonical bases attached to an LR pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairBasisKind {
    /// v_i in V_i with A v_i = v_{i-1}.
    AB,
    /// inversion of an (A,B)-basis.
    InvAB,
    /// v_i in V_{d-i} with B v_i = v_{i-1}.
    BA,
    /// inversion of a (B,A)-basis.
    InvBA,
}

/// Weyl-type detection result for an LR pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeylKind {
    None,
    Weyl,
    /// All q in the field satisfying the q-Weyl condition (q and -q both
    /// appear when valid).
    QWeyl(Vec<Scalar>),
}

/// A recognized LR pair with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LRPairData {
    a: Matrix,
    b: Matrix,
    d: usize,
    phi: Vec<Scalar>,
    basis: BasisList,
    idempotents: Vec<Matrix>,
}

/// True iff A^{d+1} = 0 and A^d != 0 on a (d+1)-dimensional space.
pub fn is_nil(a: &Matrix) -> bool {
    let d = a.diameter();
    a.pow(d + 1).is_zero() && !a.pow(d).is_zero()
}

/// Does `x` raise the flag U_i = colspace(powers[d-i])? The `powers` slice
/// holds A^k for k = 0..=d, so U_i has dimension i+1.
fn flag_raised_by(powers: &[Matrix], x: &Matrix) -> bool {
    let n = powers[0].size();
    let d = n - 1;
    let field = powers[0].field();
    for i in 0..d {
        let u_i = &powers[d - i];
        let u_next = &powers[d - i - 1];
        let xu = x * u_i;
        // containment: X U_i inside U_{i+1}, i.e. rank [U_{i+1} | X U_i] = i+2
        let stacked_rank = |left: &Matrix, right: &Matrix| {
            let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
            for r in 0..n {
                let mut row = Vec::with_capacity(2 * n);
                for c in 0..n {
                    row.push(left[(r, c)].clone());
                }
                for c in 0..n {
                    row.push(right[(r, c)].clone());
                }
                rows.push(row);
            }
            let cols = 2 * n;
            let null = nullspace(n, cols, |r, c| rows[r][c].clone(), field);
            cols - null.len()
        };
        if stacked_rank(u_next, &xu) != i + 2 {
            return false;
        }
        // fullness: U_i + X U_i has dimension i+2
        if stacked_rank(u_i, &xu) != i + 2 {
            return false;
        }
    }
    true
}

/// Recognize an LR pair; on success all derived data is populated.
pub fn recognize_lr_pair(a: &Matrix, b: &Matrix) -> Result<LRPairData, PairRejection> {
    if a.size() != b.size() {
        return Err(PairRejection::SizeMismatch);
    }
    if a.field() != b.field() {
        return Err(PairRejection::MixedFields);
    }
    let d = a.diameter();
    let field = a.field();
    let a_powers: Vec<Matrix> = (0..=d + 1).map(|k| a.pow(k)).collect();
    let b_powers: Vec<Matrix> = (0..=d + 1).map(|k| b.pow(k)).collect();
    if !(a_powers[d + 1].is_zero() && !a_powers[d].is_zero()) {
        return Err(PairRejection::NotNilA);
    }
    if !(b_powers[d + 1].is_zero() && !b_powers[d].is_zero()) {
        return Err(PairRejection::NotNilB);
    }
    if !flag_raised_by(&a_powers[..=d], b) || !flag_raised_by(&b_powers[..=d], a) {
        return Err(PairRejection::FlagNotRaised);
    }

    // canonical generator: first nonzero column of B^d, leading entry 1
    let bd = &b_powers[d];
    let xi = canonical_generator(bd);
    // (A,B)-basis v_i = A^{d-i} xi
    let vectors: Vec<Vec<Scalar>> = (0..=d).map(|i| a_powers[d - i].apply(&xi)).collect();
    let basis = BasisList::new(vectors, field).expect("canonical basis is invertible");

    // phi_i from B v_{i-1} = phi_i v_i
    let mut phi = Vec::with_capacity(d);
    for i in 1..=d {
        let image = b.apply(&basis.vector(i - 1));
        let target = basis.vector(i);
        let k = target.iter().position(|s| !s.is_zero()).expect("basis vector");
        let coeff = &image[k] / &target[k];
        let scaled: Vec<Scalar> = target.iter().map(|t| t * &coeff).collect();
        assert_eq!(image, scaled, "B action is diagonal in the canonical basis");
        assert!(!coeff.is_zero());
        phi.push(coeff);
    }

    // idempotents by both closed formulas; they must agree
    let mut prod = field.one();
    for p in &phi {
        prod = &prod * p;
    }
    let prod_inv = prod.inverse().expect("parameter product is nonzero");
    let mut idempotents = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let e1 = (&(&a_powers[d - i] * bd) * &a_powers[i]).scale(&prod_inv);
        let e2 = (&(&b_powers[i] * &a_powers[d]) * &b_powers[d - i]).scale(&prod_inv);
        assert_eq!(e1, e2, "the two idempotent formulas agree");
        idempotents.push(e1);
    }

    Ok(LRPairData {
        a: a.clone(),
        b: b.clone(),
        d,
        phi,
        basis,
        idempotents,
    })
}

fn canonical_generator(m: &Matrix) -> Vec<Scalar> {
    let n = m.size();
    for j in 0..n {
        let col = m.column(j);
        if let Some(k) = col.iter().position(|s| !s.is_zero()) {
            let inv = col[k].inverse().unwrap();
            return col.iter().map(|s| s * &inv).collect();
        }
    }
    unreachable!("B^d is nonzero for a Nil map");
}

impl LRPairData {
    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    /// The parameter sequence {phi_i}, i = 1..=d; all entries nonzero.
    pub fn parameter_sequence(&self) -> &[Scalar] {
        &self.phi
    }

    /// phi_i with the boundary convention phi_0 = phi_{d+1} = 0.
    pub fn phi(&self, i: i64) -> Scalar {
        if i < 1 || i as usize > self.d {
            self.field().zero()
        } else {
            self.phi[i as usize - 1].clone()
        }
    }

    /// The normalized column vectors spanning the decomposition components.
    pub fn decomposition(&self) -> &BasisList {
        &self.basis
    }

    pub fn idempotents(&self) -> &[Matrix] {
        &self.idempotents
    }

    /// phi_1 phi_2 ... phi_i (empty product = 1).
    pub fn phi_product(&self, i: usize) -> Scalar {
        let mut acc = self.field().one();
        for k in 0..i {
            acc = &acc * &self.phi[k];
        }
        acc
    }

    /// phi_d phi_{d-1} ... phi_{d-i+1} (empty product = 1).
    pub fn phi_product_rev(&self, i: usize) -> Scalar {
        let mut acc = self.field().one();
        for k in 0..i {
            acc = &acc * &self.phi[self.d - 1 - k];
        }
        acc
    }

    /// A canonical basis of the requested kind, derived from the stored
    /// (A,B)-basis by the standard scalings.
    pub fn basis(&self, kind: PairBasisKind) -> BasisList {
        let d = self.d;
        match kind {
            PairBasisKind::AB => self.basis.clone(),
            PairBasisKind::InvAB => self.basis.reversed(),
            PairBasisKind::InvBA => {
                let factors: Vec<Scalar> = (0..=d).map(|i| self.phi_product(i)).collect();
                self.basis.scaled(&factors)
            }
            PairBasisKind::BA => self.basis(PairBasisKind::InvBA).reversed(),
        }
    }

    /// The inverter Psi = sum_i (phi_1...phi_i)/(phi_d...phi_{d-i+1}) E_i.
    pub fn inverter(&self) -> Matrix {
        let mut psi = Matrix::zero(self.d + 1, self.field());
        for i in 0..=self.d {
            let c = &self.phi_product(i) / &self.phi_product_rev(i);
            psi = &psi + &self.idempotents[i].scale(&c);
        }
        psi
    }

    /// The matrix P, unique up to scalar, with P A^t P^{-1} = B and
    /// P B^t P^{-1} = A; the first nonzero entry in row-major order is
    /// normalized to 1. It realizes the reflector X -> P X^t P^{-1}.
    pub fn reflector_conjugator(&self) -> Matrix {
        let n = self.d + 1;
        let field = self.field();
        let at = self.a.transpose();
        let bt = self.b.transpose();
        // stack the conditions P A^t - B P = 0 and P B^t - A P = 0
        let rows = 2 * n * n;
        let get = |r: usize, c: usize| -> Scalar {
            let (cond, rest) = (r / (n * n), r % (n * n));
            let (i, j) = (rest / n, rest % n);
            let (pi, pj) = (c / n, c % n);
            let (right, left) = if cond == 0 { (&at, &self.b) } else { (&bt, &self.a) };
            // (P * right)_{ij} - (left * P)_{ij}, coefficient of P_{pi,pj}
            let mut coeff = field.zero();
            if pi == i {
                coeff = &coeff + &right[(pj, j)];
            }
            if pj == j {
                coeff = &coeff - &left[(i, pi)];
            }
            coeff
        };
        let basis = nullspace(rows, n * n, get, field);
        assert_eq!(basis.len(), 1, "reflector conjugator is unique up to scalar");
        let v = &basis[0];
        let k = v.iter().position(|s| !s.is_zero()).unwrap();
        let inv = v[k].inverse().unwrap();
        Matrix::from_fn(n, field, |i, j| &v[i * n + j] * &inv)
    }

    /// Apply the reflector antiautomorphism to x.
    pub fn reflect(&self, x: &Matrix) -> Matrix {
        let p = self.reflector_conjugator();
        let pinv = p.inverse().expect("conjugator is invertible");
        &(&p * &x.transpose()) * &pinv
    }

    /// Projector J = sum of even-indexed idempotents; requires even d.
    pub fn projector(&self) -> Result<Matrix, PairOpError> {
        if self.d % 2 != 0 {
            return Err(PairOpError::OddDiameter);
        }
        let mut j = Matrix::zero(self.d + 1, self.field());
        for i in (0..=self.d).step_by(2) {
            j = &j + &self.idempotents[i];
        }
        Ok(j)
    }

    /// (A_out, A_in, B_out, B_in) with A_out = AJ, A_in = JA; even d only.
    pub fn outer_inner_split(&self) -> Result<(Matrix, Matrix, Matrix, Matrix), PairOpError> {
        let j = self.projector()?;
        Ok((&self.a * &j, &j * &self.a, &self.b * &j, &j * &self.b))
    }

    /// Detect Weyl or q-Weyl type from the parameter sequence.
    pub fn weyl_kind(&self) -> WeylKind {
        let field = self.field();
        let one = field.one();
        // phi_{i+1} - phi_i = 1 for 0 <= i <= d
        let weyl = (0..=self.d as i64).all(|i| &self.phi(i + 1) - &self.phi(i) == one);
        if weyl {
            return WeylKind::Weyl;
        }
        if self.d == 0 {
            return WeylKind::None;
        }
        // phi_1 = 1 - q^{-2} pins q^2; verify both square roots
        let phi1 = self.phi(1);
        let rhs = &one - &phi1;
        if rhs.is_zero() {
            return WeylKind::None;
        }
        let q_squared = rhs.inverse().unwrap();
        let mut valid = Vec::new();
        for q in q_squared.sqrt_candidates() {
            if q.is_zero() || (&q * &q).is_one() {
                continue;
            }
            let qinv = q.inverse().unwrap();
            let denom = &q - &qinv;
            if denom.is_zero() {
                continue;
            }
            let ok = (0..=self.d as i64).all(|i| {
                let lhs = &(&q * &self.phi(i + 1)) - &(&qinv * &self.phi(i));
                &lhs / &denom == one
            });
            if ok {
                valid.push(q);
            }
        }
        if valid.is_empty() {
            WeylKind::None
        } else {
            WeylKind::QWeyl(valid)
        }
    }
}

/// Build the LR pair with parameter sequence phi in the standard template:
/// A has superdiagonal ones, B has subdiagonal phi_i.
pub fn pair_from_parameters(phi: &[Scalar], field: FieldSpec) -> (Matrix, Matrix) {
    let n = phi.len() + 1;
    let a = crate::linalg::tau_matrix(n, field);
    let b = Matrix::from_fn(n, field, |i, j| {
        if i == j + 1 {
            phi[j].clone()
        } else {
            field.zero()
        }
    });
    (a, b)
}
