//! Recognition and full data extraction for LR triples: three maps any two
//! of which form an LR pair, together with the parameter array, idempotent
//! data, trace data, Toeplitz data, unipotent maps, rotators, projector,
//! centralizers, double lowering spaces, and bipartite halves.

use crate::field::{FieldSpec, Scalar};
use crate::linalg::{
    d_matrix, nullspace, solve_rectangular, toeplitz_inverse_params, transition_matrix, z_matrix,
    BasisList, Matrix,
};
use crate::lrpair::{recognize_lr_pair, LRPairData, PairBasisKind, PairRejection};

/// Which pair of the triple failed recognition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSlot {
    AB,
    BC,
    CA,
}

impl std::fmt::Display for PairSlot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PairSlot::AB => "AB",
            PairSlot::BC => "BC",
            PairSlot::CA => "CA",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleRejection {
    #[error("matrices have different sizes")]
    SizeMismatch,
    #[error("matrices live over different fields")]
    MixedFields,
    #[error("pair {slot} rejected: {reason}")]
    Pair { slot: PairSlot, reason: PairRejection },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TripleOpError {
    #[error("operation requires a nonbipartite triple")]
    BipartiteInput,
    #[error("operation requires a bipartite triple")]
    NotBipartite,
    #[error("operation requires a nontrivial triple")]
    TrivialInput,
    #[error("operation requires an equitable triple")]
    NotEquitable,
    #[error("derived data violates a structural identity: {0}")]
    IdentityViolated(String),
    #[error("recursion input is not consistent with an LR triple")]
    InconsistentData,
}

/// Structural predicates of a recognized triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleFlags {
    pub bipartite: bool,
    pub equitable: bool,
    pub normalized: bool,
}

/// The six Toeplitz parameter lists (alpha and beta for each of the three
/// cyclic pair orderings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzData {
    alpha: [Vec<Scalar>; 3],
    beta: [Vec<Scalar>; 3],
}

impl ToeplitzData {
    /// seq = 0, 1, 2 for the unprimed, primed, double-primed lists.
    pub fn alpha(&self, seq: usize) -> &[Scalar] {
        &self.alpha[seq]
    }

    pub fn beta(&self, seq: usize) -> &[Scalar] {
        &self.beta[seq]
    }
}

/// A recognized LR triple with all derived data populated.
#[derive(Debug, Clone)]
pub struct LRTripleData {
    matrices: [Matrix; 3],
    d: usize,
    pairs: [LRPairData; 3],
    trace_data: [Vec<Scalar>; 3],
    toeplitz: ToeplitzData,
    theta: Scalar,
    flags: TripleFlags,
}

/// Recognize an LR triple by recognizing the pairs (A,B), (B,C), (C,A),
/// then extract trace data, Toeplitz data, theta, and flags.
pub fn recognize_lr_triple(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
) -> Result<LRTripleData, TripleRejection> {
    if a.size() != b.size() || b.size() != c.size() {
        return Err(TripleRejection::SizeMismatch);
    }
    if a.field() != b.field() || b.field() != c.field() {
        return Err(TripleRejection::MixedFields);
    }
    let pair = |x: &Matrix, y: &Matrix, slot: PairSlot| {
        recognize_lr_pair(x, y).map_err(|reason| TripleRejection::Pair { slot, reason })
    };
    let p_ab = pair(a, b, PairSlot::AB)?;
    let p_bc = pair(b, c, PairSlot::BC)?;
    let p_ca = pair(c, a, PairSlot::CA)?;
    let pairs = [p_ab, p_bc, p_ca];
    let d = a.diameter();

    // trace data: a_i = tr(C E_i), a'_i = tr(A E'_i), a''_i = tr(B E''_i)
    let third = [c, a, b];
    let mut trace_data: [Vec<Scalar>; 3] = Default::default();
    for s in 0..3 {
        trace_data[s] = (0..=d)
            .map(|i| (third[s] * &pairs[s].idempotents()[i]).trace())
            .collect();
    }

    // Toeplitz data from transitions between compatible canonical bases
    let toeplitz = toeplitz_via_transition(&pairs);

    // theta = alpha_d / beta_d, equal across the three orderings
    let theta = {
        let t0 = &toeplitz.alpha[0][d] / &toeplitz.beta[0][d];
        let t1 = &toeplitz.alpha[1][d] / &toeplitz.beta[1][d];
        let t2 = &toeplitz.alpha[2][d] / &toeplitz.beta[2][d];
        assert!(t0 == t1 && t1 == t2, "theta agrees across the orderings");
        assert!(!t0.is_zero());
        t0
    };

    let bipartite = trace_data.iter().all(|seq| seq.iter().all(Scalar::is_zero));
    let equitable =
        toeplitz.alpha[0] == toeplitz.alpha[1] && toeplitz.alpha[1] == toeplitz.alpha[2];
    let normalized = if d == 0 {
        true
    } else if bipartite {
        d >= 2 && (0..3).all(|s| toeplitz.alpha[s][2].is_one())
    } else {
        (0..3).all(|s| toeplitz.alpha[s][1].is_one())
    };
    let flags = TripleFlags {
        bipartite,
        equitable,
        normalized,
    };

    Ok(LRTripleData {
        matrices: [a.clone(), b.clone(), c.clone()],
        d,
        pairs,
        trace_data,
        toeplitz,
        theta,
        flags,
    })
}

fn toeplitz_via_transition(pairs: &[LRPairData; 3]) -> ToeplitzData {
    // T: (C,B)-basis -> compatible (C,A)-basis
    // T': (A,C)-basis -> compatible (A,B)-basis
    // T'': (B,A)-basis -> compatible (B,C)-basis
    let routes = [
        (
            pairs[1].basis(PairBasisKind::BA),
            pairs[2].basis(PairBasisKind::AB),
        ),
        (
            pairs[2].basis(PairBasisKind::BA),
            pairs[0].basis(PairBasisKind::AB),
        ),
        (
            pairs[0].basis(PairBasisKind::BA),
            pairs[1].basis(PairBasisKind::AB),
        ),
    ];
    let mut alpha: [Vec<Scalar>; 3] = Default::default();
    let mut beta: [Vec<Scalar>; 3] = Default::default();
    for (s, (from, to)) in routes.into_iter().enumerate() {
        let raw = transition_matrix(&from, &to);
        let params = raw
            .upper_toeplitz_params()
            .expect("transition between bases lowered by a common map is Toeplitz");
        // compatibility gauge: rescale the target basis by 1/alpha_0
        let a0_inv = params[0].inverse().expect("transition is invertible");
        let a: Vec<Scalar> = params.iter().map(|p| p * &a0_inv).collect();
        beta[s] = toeplitz_inverse_params(&a);
        alpha[s] = a;
    }
    ToeplitzData { alpha, beta }
}

/// Compute the Toeplitz data from the parameter array and the first
/// Toeplitz number alpha_1, by the three-term recursions. Two independent
/// recursion routes are cross-checked; disagreement means the input does
/// not come from an LR triple.
pub fn toeplitz_data_via_recursion(
    phi: &[Vec<Scalar>; 3],
    alpha1: &Scalar,
) -> Result<ToeplitzData, TripleOpError> {
    let d = phi[0].len();
    assert!(phi.iter().all(|s| s.len() == d));
    let field = alpha1.field();
    if d == 0 {
        let one = || vec![field.one()];
        return Ok(ToeplitzData {
            alpha: [one(), one(), one()],
            beta: [one(), one(), one()],
        });
    }
    let at = |seq: &[Scalar], i: i64| -> Scalar {
        if i < 1 || i as usize > d {
            field.zero()
        } else {
            seq[i as usize - 1].clone()
        }
    };
    // first Toeplitz numbers of the cycled orderings
    let alpha1s = [
        alpha1.clone(),
        &(alpha1 * &phi[1][0]) / &phi[0][0],
        &(alpha1 * &phi[2][0]) / &phi[0][0],
    ];
    let mut alpha: [Vec<Scalar>; 3] = Default::default();
    let mut beta: [Vec<Scalar>; 3] = Default::default();
    for s in 0..3 {
        // ordering s uses the cycled arrays (phi_s, phi_{s+1}, phi_{s+2})
        let f = &phi[s];
        let fp = &phi[(s + 1) % 3];
        let fpp = &phi[(s + 2) % 3];
        let a1 = alpha1s[s].clone();
        let b1 = -&a1;
        let di = d as i64;

        let mut al: Vec<Scalar> = vec![field.one(), a1.clone()];
        for i in 1..d {
            let ii = i as i64;
            let num =
                &(&(&a1 * &al[i]) * &at(fpp, 1)) + &(&(&al[i - 1] * &at(f, 1)) / &at(fp, di));
            al.push(&num / &at(fpp, ii + 1));
        }
        let mut be: Vec<Scalar> = vec![field.one(), b1.clone()];
        for i in 1..d {
            let ii = i as i64;
            let num =
                &(&(&b1 * &be[i]) * &at(fpp, di)) + &(&(&be[i - 1] * &at(f, di)) / &at(fp, 1));
            be.push(&num / &at(fpp, di - ii));
        }

        // second recursion route must agree
        for i in 1..d {
            let ii = i as i64;
            let a_alt = {
                let lead = &(&a1 * &al[i]) * &(&at(fpp, di - ii) - &at(fpp, di - ii + 1));
                let tail = &(&al[i - 1] * &at(f, di - ii + 1)) / &at(fp, ii);
                &(&lead - &tail) / &at(fpp, di - ii)
            };
            if a_alt != al[i + 1] {
                return Err(TripleOpError::InconsistentData);
            }
            let b_alt = {
                let lead = &(&b1 * &be[i]) * &(&at(fpp, ii + 1) - &at(fpp, ii));
                let tail = &(&be[i - 1] * &at(f, ii)) / &at(fp, di - ii + 1);
                &(&lead - &tail) / &at(fpp, ii + 1)
            };
            if b_alt != be[i + 1] {
                return Err(TripleOpError::InconsistentData);
            }
        }
        // terminal identities
        let lhs_a = &(&a1 * &al[d]) * &at(fpp, 1);
        let rhs_a = -&(&(&al[d - 1] * &at(f, 1)) / &at(fp, di));
        let lhs_b = &(&b1 * &be[d]) * &at(fpp, di);
        let rhs_b = -&(&(&be[d - 1] * &at(f, di)) / &at(fp, 1));
        if lhs_a != rhs_a || lhs_b != rhs_b {
            return Err(TripleOpError::InconsistentData);
        }
        alpha[s] = al;
        beta[s] = be;
    }
    Ok(ToeplitzData { alpha, beta })
}

impl LRTripleData {
    pub fn a(&self) -> &Matrix {
        &self.matrices[0]
    }

    pub fn b(&self) -> &Matrix {
        &self.matrices[1]
    }

    pub fn c(&self) -> &Matrix {
        &self.matrices[2]
    }

    pub fn matrix(&self, k: usize) -> &Matrix {
        &self.matrices[k]
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.matrices[0].field()
    }

    /// Pair s = 0, 1, 2 for (A,B), (B,C), (C,A).
    pub fn pair(&self, s: usize) -> &LRPairData {
        &self.pairs[s]
    }

    /// Parameter array entry: seq 0, 1, 2 for phi, phi', phi''; boundary
    /// convention phi_0 = phi_{d+1} = 0.
    pub fn phi(&self, seq: usize, i: i64) -> Scalar {
        self.pairs[seq].phi(i)
    }

    pub fn parameter_array(&self) -> [&[Scalar]; 3] {
        [
            self.pairs[0].parameter_sequence(),
            self.pairs[1].parameter_sequence(),
            self.pairs[2].parameter_sequence(),
        ]
    }

    /// Idempotent E_i (seq 0), E'_i (seq 1), E''_i (seq 2).
    pub fn e(&self, seq: usize, i: usize) -> &Matrix {
        &self.pairs[seq].idempotents()[i]
    }

    /// Trace data a_i (seq 0), a'_i (seq 1), a''_i (seq 2).
    pub fn trace_data(&self, seq: usize) -> &[Scalar] {
        &self.trace_data[seq]
    }

    pub fn toeplitz(&self) -> &ToeplitzData {
        &self.toeplitz
    }

    pub fn theta(&self) -> &Scalar {
        &self.theta
    }

    pub fn flags(&self) -> TripleFlags {
        self.flags
    }

    pub fn is_trivial(&self) -> bool {
        self.d == 0
    }

    /// The unipotent maps, as sums of products of idempotents.
    pub fn unipotent_maps(&self) -> (Matrix, Matrix, Matrix) {
        let n = self.d + 1;
        let field = self.field();
        let sum = |left: usize, right: usize| {
            let mut acc = Matrix::zero(n, field);
            for i in 0..=self.d {
                acc = &acc + &(self.e(left, self.d - i) * self.e(right, i));
            }
            acc
        };
        (sum(0, 2), sum(1, 0), sum(2, 1))
    }

    /// Weighted sum of the idempotents of sequence `seq`.
    fn weighted_e_sum(&self, seq: usize, weight: &dyn Fn(usize) -> Option<Scalar>) -> Matrix {
        let mut acc = Matrix::zero(self.d + 1, self.field());
        for i in 0..=self.d {
            if let Some(w) = weight(i) {
                acc = &acc + &self.e(seq, i).scale(&w);
            }
        }
        acc
    }

    /// The standard rotator of a nonbipartite (or trivial) triple; the
    /// three defining expressions are checked to agree, and the cube is
    /// checked to be theta I.
    pub fn rotator(&self) -> Result<Matrix, TripleOpError> {
        if self.flags.bipartite && !self.is_trivial() {
            return Err(TripleOpError::BipartiteInput);
        }
        let (ua, ub, uc) = self.unipotent_maps();
        let coeff =
            |i: usize| Some(&self.pairs[0].phi_product(i) / &self.pairs[0].phi_product_rev(i));
        let m0 = self.weighted_e_sum(0, &coeff);
        let m1 = self.weighted_e_sum(1, &coeff);
        let m2 = self.weighted_e_sum(2, &coeff);
        let omega = &(&ub * &m0) * &ua;
        let alt1 = &(&uc * &m1) * &ub;
        let alt2 = &(&ua * &m2) * &uc;
        if omega != alt1 || omega != alt2 {
            return Err(TripleOpError::IdentityViolated(
                "rotator expressions disagree".into(),
            ));
        }
        let cube = omega.pow(3);
        let expect = Matrix::identity(self.d + 1, self.field()).scale(&self.theta);
        if cube != expect {
            return Err(TripleOpError::IdentityViolated("rotator cube".into()));
        }
        Ok(omega)
    }

    /// Projector J of a bipartite triple (common to the three pairs).
    pub fn projector(&self) -> Result<Matrix, TripleOpError> {
        if !self.flags.bipartite {
            return Err(TripleOpError::NotBipartite);
        }
        let j = self.pairs[0]
            .projector()
            .map_err(|_| TripleOpError::NotBipartite)?;
        for s in 1..3 {
            let js = self.pairs[s].projector().unwrap();
            assert_eq!(j, js, "projector is pair-independent");
        }
        Ok(j)
    }

    /// Standard outer and inner rotators of a bipartite nontrivial triple;
    /// the defining expressions are cross-checked, along with the cube
    /// identities on the outer and inner parts.
    pub fn rotators_out_in(&self) -> Result<(Matrix, Matrix), TripleOpError> {
        if !self.flags.bipartite {
            return Err(TripleOpError::NotBipartite);
        }
        if self.is_trivial() {
            return Err(TripleOpError::TrivialInput);
        }
        let (ua, ub, uc) = self.unipotent_maps();
        let out_coeff = |i: usize| {
            if i % 2 != 0 {
                return None;
            }
            Some(&self.pairs[0].phi_product(i) / &self.pairs[0].phi_product_rev(i))
        };
        let in_coeff = |i: usize| {
            if i % 2 == 0 {
                return None;
            }
            // phi_2 ... phi_i over phi_{d-1} ... phi_{d-i+1}
            let mut num = self.field().one();
            let mut den = self.field().one();
            for k in 2..=(i as i64) {
                num = &num * &self.phi(0, k);
            }
            for k in (self.d as i64 - i as i64 + 1)..=(self.d as i64 - 1) {
                den = &den * &self.phi(0, k);
            }
            Some(&num / &den)
        };
        let build = |coeff: &dyn Fn(usize) -> Option<Scalar>| {
            let m0 = self.weighted_e_sum(0, coeff);
            let m1 = self.weighted_e_sum(1, coeff);
            let m2 = self.weighted_e_sum(2, coeff);
            let omega = &(&ub * &m0) * &ua;
            let alt1 = &(&uc * &m1) * &ub;
            let alt2 = &(&ua * &m2) * &uc;
            if omega != alt1 || omega != alt2 {
                return Err(TripleOpError::IdentityViolated(
                    "outer/inner rotator expressions disagree".into(),
                ));
            }
            Ok(omega)
        };
        let omega_out = build(&out_coeff)?;
        let omega_in = build(&in_coeff)?;
        let j = self.projector()?;
        let ident = Matrix::identity(self.d + 1, self.field());
        if omega_out.pow(3) != j.scale(&self.theta) {
            return Err(TripleOpError::IdentityViolated("outer rotator cube".into()));
        }
        let rho = {
            let num = &(&self.phi(0, 1) * &self.phi(1, 1)) * &self.phi(2, 1);
            let di = self.d as i64;
            let den = &(&self.phi(0, di) * &self.phi(1, di)) * &self.phi(2, di);
            &num / &den
        };
        let scale_in = &self.theta / &rho;
        if omega_in.pow(3) != (&ident - &j).scale(&scale_in) {
            return Err(TripleOpError::IdentityViolated("inner rotator cube".into()));
        }
        Ok((omega_out, omega_in))
    }

    /// The twelve relatives: the six permutations acting on V, and the six
    /// transposed triples realizing the dual module in the dual basis.
    /// Each is recognized, and its parameter array is checked against the
    /// expected reindexing of this triple's array.
    pub fn relatives(&self) -> Vec<(String, LRTripleData)> {
        let [a, b, c] = &self.matrices;
        let at = a.transpose();
        let bt = b.transpose();
        let ct = c.transpose();
        let fwd = |s: usize| self.pairs[s].parameter_sequence().to_vec();
        let rev = |s: usize| -> Vec<Scalar> {
            self.pairs[s]
                .parameter_sequence()
                .iter()
                .rev()
                .cloned()
                .collect()
        };
        let table: Vec<(&str, [&Matrix; 3], [Vec<Scalar>; 3])> = vec![
            ("ABC", [a, b, c], [fwd(0), fwd(1), fwd(2)]),
            ("BCA", [b, c, a], [fwd(1), fwd(2), fwd(0)]),
            ("CAB", [c, a, b], [fwd(2), fwd(0), fwd(1)]),
            ("CBA", [c, b, a], [rev(1), rev(0), rev(2)]),
            ("ACB", [a, c, b], [rev(2), rev(1), rev(0)]),
            ("BAC", [b, a, c], [rev(0), rev(2), rev(1)]),
            ("tABC", [&at, &bt, &ct], [rev(0), rev(1), rev(2)]),
            ("tBCA", [&bt, &ct, &at], [rev(1), rev(2), rev(0)]),
            ("tCAB", [&ct, &at, &bt], [rev(2), rev(0), rev(1)]),
            ("tCBA", [&ct, &bt, &at], [fwd(1), fwd(0), fwd(2)]),
            ("tACB", [&at, &ct, &bt], [fwd(2), fwd(1), fwd(0)]),
            ("tBAC", [&bt, &at, &ct], [fwd(0), fwd(2), fwd(1)]),
        ];
        table
            .into_iter()
            .map(|(label, [x, y, z], expect)| {
                let t = recognize_lr_triple(x, y, z)
                    .unwrap_or_else(|e| panic!("relative {label} must be an LR triple: {e}"));
                for s in 0..3 {
                    assert_eq!(
                        t.pairs[s].parameter_sequence(),
                        &expect[s][..],
                        "parameter array of relative {label}, sequence {s}"
                    );
                }
                (label.to_string(), t)
            })
            .collect()
    }

    /// Basis of the idempotent centralizer algebra: all X commuting with
    /// every E_i, E'_i, E''_i. Dimension 1 (trivial or nonbipartite,
    /// spanned by I) or 2 (bipartite nontrivial, spanned by I and J).
    pub fn idempotent_centralizer_basis(&self) -> Vec<Matrix> {
        let n = self.d + 1;
        let field = self.field();
        let mut conditions: Vec<Matrix> = Vec::new();
        for s in 0..3 {
            for i in 0..=self.d {
                conditions.push(self.e(s, i).clone());
            }
        }
        // [X, E] = 0 as linear conditions on the n^2 entries of X
        let rows = conditions.len() * n * n;
        let get = |r: usize, col: usize| -> Scalar {
            let (which, rest) = (r / (n * n), r % (n * n));
            let (i, j) = (rest / n, rest % n);
            let (pi, pj) = (col / n, col % n);
            let e = &conditions[which];
            let mut coeff = field.zero();
            if pi == i {
                coeff = &coeff + &e[(pj, j)];
            }
            if pj == j {
                coeff = &coeff - &e[(i, pi)];
            }
            coeff
        };
        nullspace(rows, n * n, get, field)
            .into_iter()
            .map(|v| Matrix::from_fn(n, field, |i, j| v[i * n + j].clone()))
            .collect()
    }

    /// Basis of the double lowering space for the given letter (0 = A,
    /// 1 = B, 2 = C): all X weakly lowering both decompositions attached
    /// to that letter. Dimension 0 (trivial), 1 (nonbipartite), or
    /// 2 (bipartite nontrivial).
    pub fn double_lowering_basis(&self, letter: usize) -> Vec<Matrix> {
        let n = self.d + 1;
        let field = self.field();
        // decompositions with the letter lowering:
        // A: (A,B) and (A,C); B: (B,C) and (B,A); C: (C,A) and (C,B)
        let bases: [BasisList; 2] = match letter {
            0 => [
                self.pairs[0].basis(PairBasisKind::AB),
                self.pairs[2].basis(PairBasisKind::InvAB),
            ],
            1 => [
                self.pairs[1].basis(PairBasisKind::AB),
                self.pairs[0].basis(PairBasisKind::InvAB),
            ],
            2 => [
                self.pairs[2].basis(PairBasisKind::AB),
                self.pairs[1].basis(PairBasisKind::InvAB),
            ],
            _ => panic!("letter must be 0, 1, or 2"),
        };
        let data: Vec<(Matrix, Matrix)> = bases
            .iter()
            .map(|p| {
                let m = p.as_matrix().clone();
                let inv = m.inverse().expect("basis invertible");
                (inv, m)
            })
            .collect();
        // conditions: (P^{-1} X P)_{ij} = 0 whenever j != i+1
        let cells: Vec<(usize, usize, usize)> = (0..2)
            .flat_map(|w| {
                (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i + 1).map(move |j| (w, i, j)))
            })
            .collect();
        let get = |r: usize, col: usize| -> Scalar {
            let (w, i, j) = cells[r];
            let (pi, pj) = (col / n, col % n);
            let (inv, m) = &data[w];
            &inv[(i, pi)] * &m[(pj, j)]
        };
        nullspace(cells.len(), n * n, get, field)
            .into_iter()
            .map(|v| Matrix::from_fn(n, field, |i, j| v[i * n + j].clone()))
            .collect()
    }

    /// Restriction of A^2, B^2, C^2 to the outer part (even-indexed
    /// components) and, when nontrivial, the inner part, each recognized
    /// as an LR triple in the even/odd canonical basis vectors.
    pub fn bipartite_halves(&self) -> Result<(LRTripleData, Option<LRTripleData>), TripleOpError> {
        if !self.flags.bipartite {
            return Err(TripleOpError::NotBipartite);
        }
        let basis = self.pairs[0].basis(PairBasisKind::AB);
        let restrict = |indices: &[usize]| -> LRTripleData {
            let m = indices.len();
            let cols: Vec<Vec<Scalar>> = indices.iter().map(|&i| basis.vector(i)).collect();
            let rep = |x: &Matrix| -> Matrix {
                Matrix::from_fn(m, self.field(), |i, j| {
                    let img = x.apply(&cols[j]);
                    let sol = solve_rectangular(
                        self.d + 1,
                        m,
                        |r, c| cols[c][r].clone(),
                        &img,
                        self.field(),
                    )
                    .expect("outer/inner parts are invariant under the squares");
                    sol[i].clone()
                })
            };
            let a2 = rep(&self.a().pow(2));
            let b2 = rep(&self.b().pow(2));
            let c2 = rep(&self.c().pow(2));
            recognize_lr_triple(&a2, &b2, &c2).expect("restricted squares form an LR triple")
        };
        let even: Vec<usize> = (0..=self.d).step_by(2).collect();
        let outer = restrict(&even);
        let inner = if self.d >= 2 {
            let odd: Vec<usize> = (1..=self.d).step_by(2).collect();
            Some(restrict(&odd))
        } else {
            None
        };
        Ok((outer, inner))
    }

    /// Evaluate T' D Z T'' D' Z T D'' Z and confirm it is the expected
    /// scalar multiple of the identity; returns the verified scalar
    /// 1/(theta beta_d beta'_d beta''_d).
    pub fn twelve_cycle_check(&self) -> Result<Scalar, TripleOpError> {
        let n = self.d + 1;
        let field = self.field();
        let z = z_matrix(n, field);
        let toep = |s: usize| crate::linalg::toeplitz_matrix(&self.toeplitz.alpha[s], field);
        let dm = |s: usize| d_matrix(self.pairs[s].parameter_sequence(), field);
        let prod = &(&(&(&(&(&(&(&toep(1) * &dm(0)) * &z) * &toep(2)) * &dm(1)) * &z) * &toep(0))
            * &dm(2))
            * &z;
        let mut denom = self.theta.clone();
        for s in 0..3 {
            denom = &denom * &self.toeplitz.beta[s][self.d];
        }
        let scalar = denom.inverse().expect("theta and beta_d are nonzero");
        if prod != Matrix::identity(n, field).scale(&scalar) {
            return Err(TripleOpError::IdentityViolated(
                "twelve-cycle product".into(),
            ));
        }
        Ok(scalar)
    }

    /// Run the full catalogue of structural identities the derived data
    /// must satisfy; returns (identity id, holds) pairs.
    pub fn identity_suite(&self) -> Vec<(String, bool)> {
        let mut out: Vec<(String, bool)> = Vec::new();
        let n = self.d + 1;
        let d = self.d;
        let di = d as i64;
        let field = self.field();
        let mut push = |id: String, holds: bool| out.push((id, holds));

        // six idempotent closed formulas
        let letters = [self.a(), self.b(), self.c()];
        for s in 0..3 {
            let x = letters[s];
            let y = letters[(s + 1) % 3];
            let prod_inv = self.pairs[s].phi_product(d).inverse().unwrap();
            let mut ok = true;
            for i in 0..=d {
                let first = (&(&x.pow(d - i) * &y.pow(d)) * &x.pow(i)).scale(&prod_inv);
                let second = (&(&y.pow(i) * &x.pow(d)) * &y.pow(d - i)).scale(&prod_inv);
                ok &= &first == self.e(s, i) && &second == self.e(s, i);
            }
            push(format!("idempotent.form.{s}"), ok);
        }

        // vanishing products and triple products across idempotent families
        let mut zero_ok = true;
        let mut triple_ok = true;
        for s in 0..3 {
            let sp = (s + 1) % 3;
            for i in 0..=d {
                for j in 0..=d {
                    let ef = self.e(s, i) * self.e(sp, j);
                    if i + j < d && !ef.is_zero() {
                        zero_ok = false;
                    }
                    let fe = self.e(sp, j) * self.e(s, i);
                    if i + j > d && !fe.is_zero() {
                        zero_ok = false;
                    }
                    let tp = &ef * self.e(s, i);
                    let expect = if i + j == d {
                        self.e(s, i).clone()
                    } else {
                        Matrix::zero(n, field)
                    };
                    if tp != expect {
                        triple_ok = false;
                    }
                    let tp2 = &(self.e(s, i) * self.e((s + 2) % 3, j)) * self.e(s, i);
                    if tp2 != expect {
                        triple_ok = false;
                    }
                }
            }
        }
        push("idempotent.vanishing".into(), zero_ok);
        push("idempotent.tripleproduct".into(), triple_ok);

        // products of letter powers with idempotents vanish off range
        let mut nil_ok = true;
        for s in 0..3 {
            let x = letters[s];
            let y = letters[(s + 1) % 3];
            for i in 0..=d {
                for jj in (i + 1)..=d {
                    nil_ok &= (&x.pow(jj) * self.e(s, i)).is_zero();
                    nil_ok &= (self.e(s, jj) * &x.pow(d - i)).is_zero();
                    nil_ok &= (self.e(s, i) * &y.pow(jj)).is_zero();
                    nil_ok &= (&y.pow(d - i) * self.e(s, jj)).is_zero();
                }
            }
        }
        push("idempotent.nilvanishing".into(), nil_ok);

        // the 18-entry trace table for products of two letters
        let two_letter: [(usize, usize, usize, bool); 6] = [
            (0, 1, 0, false), // AB reads phi_{i+1} on its own family
            (1, 0, 0, true),  // BA reads phi_i
            (1, 2, 1, false), // BC
            (2, 1, 1, true),  // CB
            (2, 0, 2, false), // CA
            (0, 2, 2, true),  // AC
        ];
        let mut trace_ok = true;
        for (x, y, seq, swapped) in two_letter {
            let f = letters[x] * letters[y];
            for es in 0..3 {
                for i in 0..=d {
                    let ii = i as i64;
                    let expected = if es == seq {
                        if swapped {
                            self.phi(seq, ii)
                        } else {
                            self.phi(seq, ii + 1)
                        }
                    } else if swapped {
                        self.phi(seq, di - ii)
                    } else {
                        self.phi(seq, di - ii + 1)
                    };
                    if (&f * self.e(es, i)).trace() != expected {
                        trace_ok = false;
                    }
                }
            }
        }
        push("trace.table".into(), trace_ok);

        // trace data sums to zero
        for s in 0..3 {
            let mut acc = field.zero();
            for v in &self.trace_data[s] {
                acc = &acc + v;
            }
            push(format!("trace.sum.{s}"), acc.is_zero());
        }

        // two-term relations between trace data and Toeplitz data
        let al = |s: usize, i: usize| self.toeplitz.alpha[s][i].clone();
        let be = |s: usize, i: usize| self.toeplitz.beta[s][i].clone();
        if d >= 1 {
            let mut ok = true;
            for i in 0..=di {
                let i_us = i as usize;
                let lhs = self.trace_data[0][d - i_us].clone();
                let r1 = &(&be(1, 1) * &self.phi(2, i)) + &(&al(1, 1) * &self.phi(2, i + 1));
                let r2 = &(&be(2, 1) * &self.phi(1, i)) + &(&al(2, 1) * &self.phi(1, i + 1));
                ok &= lhs == r1 && lhs == r2;
                let lhs = self.trace_data[1][d - i_us].clone();
                let r1 = &(&be(2, 1) * &self.phi(0, i)) + &(&al(2, 1) * &self.phi(0, i + 1));
                let r2 = &(&be(0, 1) * &self.phi(2, i)) + &(&al(0, 1) * &self.phi(2, i + 1));
                ok &= lhs == r1 && lhs == r2;
                let lhs = self.trace_data[2][d - i_us].clone();
                let r1 = &(&be(0, 1) * &self.phi(1, i)) + &(&al(0, 1) * &self.phi(1, i + 1));
                let r2 = &(&be(1, 1) * &self.phi(0, i)) + &(&al(1, 1) * &self.phi(0, i + 1));
                ok &= lhs == r1 && lhs == r2;
            }
            push("trace.twoterm".into(), ok);
        }

        // three-term relations among the parameter sequences
        if d >= 2 {
            let mut ok = true;
            // (data sequence, left phi, right phi, argument phi)
            let rows: [(usize, usize, usize, usize); 6] = [
                (1, 1, 2, 0),
                (2, 2, 0, 1),
                (0, 0, 1, 2),
                (2, 2, 1, 0),
                (0, 0, 2, 1),
                (1, 1, 0, 2),
            ];
            for i in 1..=di {
                for (tseq, lseq, rseq, arg) in rows {
                    let lhs = &self.phi(lseq, i) / &self.phi(rseq, di - i + 1);
                    let rhs = &(&(&be(tseq, 2) * &self.phi(arg, i - 1))
                        + &(&(&al(tseq, 1) * &be(tseq, 1)) * &self.phi(arg, i)))
                        + &(&al(tseq, 2) * &self.phi(arg, i + 1));
                    ok &= lhs == rhs;
                }
            }
            push("trace.threeterm".into(), ok);
        }

        // long relations: convolutions of alpha and beta against phi vanish
        if d >= 2 {
            let mut ok = true;
            for r in 3..=(d + 1) {
                for i in 0..=(d + 1 - r) {
                    let pairs: [(usize, usize); 6] =
                        [(1, 0), (2, 1), (0, 2), (2, 0), (0, 1), (1, 2)];
                    for (tseq, arg) in pairs {
                        let mut acc = field.zero();
                        for k in 0..=r {
                            if k <= d && r - k <= d {
                                let term = &(&al(tseq, k) * &be(tseq, r - k))
                                    * &self.phi(arg, (i + k) as i64);
                                acc = &acc + &term;
                            }
                        }
                        ok &= acc.is_zero();
                    }
                }
            }
            push("trace.longrec".into(), ok);
        }

        // Toeplitz data normalization
        let mut norm_ok = true;
        for s in 0..3 {
            norm_ok &= al(s, 0).is_one() && be(s, 0).is_one();
            if d >= 1 {
                norm_ok &= be(s, 1) == -&al(s, 1);
            }
        }
        push("toeplitz.gauge".into(), norm_ok);

        // recursion route reproduces the transition route
        if d >= 1 {
            let phi_arrays = [
                self.pairs[0].parameter_sequence().to_vec(),
                self.pairs[1].parameter_sequence().to_vec(),
                self.pairs[2].parameter_sequence().to_vec(),
            ];
            let rec = toeplitz_data_via_recursion(&phi_arrays, &al(0, 1));
            push(
                "toeplitz.recursion".into(),
                rec.map(|r| r == self.toeplitz).unwrap_or(false),
            );
        }

        // theta: ratio form, the sextuple idempotent trace, power traces
        let mut theta_ok = (0..3).all(|s| &al(s, d) / &be(s, d) == self.theta);
        let sextuple = &(&(&(&(self.e(1, d) * self.e(0, 0)) * self.e(2, d)) * self.e(1, 0))
            * self.e(0, d))
            * self.e(2, 0);
        theta_ok &= sextuple.trace() == self.theta;
        let abc = &(&self.a().pow(d) * &self.b().pow(d)) * &self.c().pow(d);
        let cba = &(&self.c().pow(d) * &self.b().pow(d)) * &self.a().pow(d);
        let aprod = &(&al(0, d) * &al(1, d)) * &al(2, d);
        let bprod = &(&be(0, d) * &be(1, d)) * &be(2, d);
        theta_ok &= abc.trace() == &self.theta / &aprod;
        theta_ok &= cba.trace() == (&self.theta * &bprod).inverse().unwrap();
        push("theta.consistency".into(), theta_ok);

        // unipotent maps: polynomial forms, inverses, idempotent exchange
        let (ua, ub, uc) = self.unipotent_maps();
        let poly = |coeffs: &[Scalar], x: &Matrix| {
            let mut acc = Matrix::zero(n, field);
            for (k, cf) in coeffs.iter().enumerate() {
                acc = &acc + &x.pow(k).scale(cf);
            }
            acc
        };
        let mut uni_ok = ua == poly(&self.toeplitz.alpha[1], self.a());
        uni_ok &= ub == poly(&self.toeplitz.alpha[2], self.b());
        uni_ok &= uc == poly(&self.toeplitz.alpha[0], self.c());
        let ua_inv = ua.inverse().expect("unipotent maps are invertible");
        let ub_inv = ub.inverse().unwrap();
        let uc_inv = uc.inverse().unwrap();
        uni_ok &= ua_inv == poly(&self.toeplitz.beta[1], self.a());
        uni_ok &= ub_inv == poly(&self.toeplitz.beta[2], self.b());
        uni_ok &= uc_inv == poly(&self.toeplitz.beta[0], self.c());
        for i in 0..=d {
            uni_ok &= &ua * self.e(2, i) == self.e(0, d - i) * &ua;
            uni_ok &= &ub * self.e(0, i) == self.e(1, d - i) * &ub;
            uni_ok &= &uc * self.e(1, i) == self.e(2, d - i) * &uc;
        }
        // each map differs from the identity by a nilpotent
        let ident = Matrix::identity(n, field);
        for u in [&ua, &ub, &uc] {
            uni_ok &= (u - &ident).pow(d + 1).is_zero();
        }
        push("unipotent.suite".into(), uni_ok);

        // rotators
        if !self.flags.bipartite || self.is_trivial() {
            match self.rotator() {
                Ok(omega) => {
                    let mut rot_ok = true;
                    for i in 0..=d {
                        rot_ok &= self.e(0, i) * &omega == &omega * self.e(1, i);
                        rot_ok &= self.e(1, i) * &omega == &omega * self.e(2, i);
                        rot_ok &= self.e(2, i) * &omega == &omega * self.e(0, i);
                    }
                    if d >= 1 {
                        let a1 = al(0, 1);
                        let a1p = al(1, 1);
                        let a1pp = al(2, 1);
                        rot_ok &=
                            (self.a() * &omega).scale(&a1p) == (&omega * self.b()).scale(&a1pp);
                        rot_ok &=
                            (self.b() * &omega).scale(&a1pp) == (&omega * self.c()).scale(&a1);
                        rot_ok &= (self.c() * &omega).scale(&a1) == (&omega * self.a()).scale(&a1p);
                        if self.flags.equitable {
                            rot_ok &= self.a() * &omega == &omega * self.b();
                            rot_ok &= self.b() * &omega == &omega * self.c();
                            rot_ok &= self.c() * &omega == &omega * self.a();
                        }
                    }
                    push("rotator.suite".into(), rot_ok);
                }
                Err(_) => push("rotator.suite".into(), false),
            }
        } else {
            match self.rotators_out_in() {
                Ok((oo, oi)) => {
                    let mut rot_ok = (&oo * &oi).is_zero() && (&oi * &oo).is_zero();
                    for i in 0..=d {
                        for om in [&oo, &oi] {
                            rot_ok &= self.e(0, i) * om == om * self.e(1, i);
                            rot_ok &= self.e(1, i) * om == om * self.e(2, i);
                            rot_ok &= self.e(2, i) * om == om * self.e(0, i);
                        }
                        if i % 2 == 1 {
                            rot_ok &= (self.e(0, i) * &oo).is_zero();
                        } else {
                            rot_ok &= (self.e(0, i) * &oi).is_zero();
                        }
                    }
                    // squares of the letters exchange across both rotators,
                    // weighted by the degree-two Toeplitz numbers
                    let (a2, a2p, a2pp) = (al(0, 2), al(1, 2), al(2, 2));
                    for om in [&oo, &oi] {
                        rot_ok &= (&self.a().pow(2) * om).scale(&a2p)
                            == (om * &self.b().pow(2)).scale(&a2pp);
                        rot_ok &= (&self.b().pow(2) * om).scale(&a2pp)
                            == (om * &self.c().pow(2)).scale(&a2);
                        rot_ok &= (&self.c().pow(2) * om).scale(&a2)
                            == (om * &self.a().pow(2)).scale(&a2p);
                        if self.flags.equitable {
                            rot_ok &= &self.a().pow(2) * om == om * &self.b().pow(2);
                            rot_ok &= &self.b().pow(2) * om == om * &self.c().pow(2);
                            rot_ok &= &self.c().pow(2) * om == om * &self.a().pow(2);
                        }
                    }
                    push("rotator.suite".into(), rot_ok);
                }
                Err(_) => push("rotator.suite".into(), false),
            }
        }

        // twelve-cycle
        push("cycle.twelve".into(), self.twelve_cycle_check().is_ok());

        // parity structure of the Toeplitz data
        if self.flags.bipartite {
            let mut ok = d % 2 == 0;
            for s in 0..3 {
                for i in 0..=d {
                    let want_zero = i % 2 == 1;
                    ok &= al(s, i).is_zero() == want_zero && be(s, i).is_zero() == want_zero;
                }
            }
            push("flags.bipartite.parity".into(), ok);
        } else {
            let ok = d >= 1 && (0..3).all(|s| !al(s, 1).is_zero() && !be(s, 1).is_zero());
            push("flags.nonbipartite.toeplitz".into(), ok);
        }

        // equitable structure
        if self.flags.equitable && !self.flags.bipartite && d >= 1 {
            let mut ok = true;
            for i in 1..=di {
                ok &= self.phi(0, i) == self.phi(1, i) && self.phi(0, i) == self.phi(2, i);
            }
            for i in 0..=di {
                let expect = &al(0, 1) * &(&self.phi(0, di - i + 1) - &self.phi(0, di - i));
                ok &= self.trace_data[0][i as usize] == expect;
                ok &= self.trace_data[1][i as usize] == expect;
                ok &= self.trace_data[2][i as usize] == expect;
            }
            push("flags.equitable.structure".into(), ok);
        }

        out
    }
}

/// Build the triple with the given parameter arrays and diagonal trace
/// data in the canonical template: A has superdiagonal ones, B has
/// subdiagonal phi_i, and C is tridiagonal.
pub fn triple_from_data(
    phi: &[Vec<Scalar>; 3],
    a_diag: &[Scalar],
    field: FieldSpec,
) -> (Matrix, Matrix, Matrix) {
    let d = phi[0].len();
    let n = d + 1;
    assert!(phi.iter().all(|s| s.len() == d));
    assert_eq!(a_diag.len(), n);
    let a = crate::linalg::tau_matrix(n, field);
    let b = Matrix::from_fn(n, field, |i, j| {
        if i == j + 1 {
            phi[0][j].clone()
        } else {
            field.zero()
        }
    });
    let c = Matrix::from_fn(n, field, |i, j| {
        if i == j {
            a_diag[i].clone()
        } else if i == j + 1 {
            // subdiagonal: phi''_{d-i+1} at row i
            phi[2][d - i].clone()
        } else if j == i + 1 {
            // superdiagonal: phi'_{d-j+1} / phi_j at column j
            &phi[1][d - j] / &phi[0][j - 1]
        } else {
            field.zero()
        }
    });
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    /// The unique normalized diameter-1 triple.
    fn diam1_triple() -> LRTripleData {
        let a = Matrix::from_rows(
            vec![vec![q().zero(), q().one()], vec![q().zero(), q().zero()]],
            q(),
        );
        let b = Matrix::from_rows(
            vec![vec![q().zero(), q().zero()], vec![q().scalar(-1), q().zero()]],
            q(),
        );
        let c = Matrix::from_rows(
            vec![
                vec![q().one(), q().one()],
                vec![q().scalar(-1), q().scalar(-1)],
            ],
            q(),
        );
        recognize_lr_triple(&a, &b, &c).unwrap()
    }

    /// The normalized nonbipartite diameter-2 triple with parameter q.
    fn d2_nbg_triple(qv: Scalar) -> LRTripleData {
        let field = qv.field();
        let one = field.one();
        let qinv = qv.inverse().unwrap();
        let phi1 = -&(&one + &qinv);
        let phi2 = -&(&one + &qv);
        let phi = vec![phi1, phi2];
        let arrays = [phi.clone(), phi.clone(), phi];
        let a_diag = vec![&one + &qv, &qinv - &qv, -&(&one + &qinv)];
        let (a, b, c) = triple_from_data(&arrays, &a_diag, field);
        recognize_lr_triple(&a, &b, &c).unwrap()
    }

    /// The normalized bipartite diameter-2 triple for a rho-triple.
    fn d2_bip_triple(r0: Scalar, r0p: Scalar, r0pp: Scalar) -> LRTripleData {
        let field = r0.field();
        let mk = |r: &Scalar| vec![-&r.inverse().unwrap(), r.clone()];
        let arrays = [mk(&r0), mk(&r0p), mk(&r0pp)];
        let zeros = vec![field.zero(); 3];
        let (a, b, c) = triple_from_data(&arrays, &zeros, field);
        recognize_lr_triple(&a, &b, &c).unwrap()
    }

    fn trivial_triple() -> LRTripleData {
        let z = Matrix::zero(1, q());
        recognize_lr_triple(&z, &z, &z).unwrap()
    }

    #[test]
    fn trivial_triple_data() {
        let t = trivial_triple();
        assert!(t.is_trivial());
        let f = t.flags();
        assert!(f.bipartite && f.equitable && f.normalized);
        assert!(t.theta().is_one());
        assert_eq!(t.twelve_cycle_check().unwrap(), q().one());
        let (ua, ub, uc) = t.unipotent_maps();
        let i1 = Matrix::identity(1, q());
        assert!(ua == i1 && ub == i1 && uc == i1);
    }

    #[test]
    fn repeated_letter_rejected() {
        let t1 = diam1_triple();
        let err = recognize_lr_triple(t1.a(), t1.b(), t1.b()).unwrap_err();
        assert!(matches!(
            err,
            TripleRejection::Pair {
                slot: PairSlot::BC,
                ..
            }
        ));
    }

    #[test]
    fn diam1_data() {
        let t = diam1_triple();
        assert_eq!(t.diameter(), 1);
        for s in 0..3 {
            assert_eq!(t.pair(s).parameter_sequence(), &[q().scalar(-1)]);
            assert_eq!(t.trace_data(s), &[q().one(), q().scalar(-1)]);
            assert_eq!(t.toeplitz().alpha(s), &[q().one(), q().one()]);
            assert_eq!(t.toeplitz().beta(s), &[q().one(), q().scalar(-1)]);
        }
        let f = t.flags();
        assert!(!f.bipartite && f.equitable && f.normalized);
        assert_eq!(t.theta(), &q().scalar(-1));

        // unipotent map is I + A
        let (ua, _, _) = t.unipotent_maps();
        assert_eq!(ua, &Matrix::identity(2, q()) + t.a());

        // rotator matches the classification matrix and cubes to theta
        let omega = t.rotator().unwrap();
        let expect = Matrix::from_rows(
            vec![vec![q().one(), q().one()], vec![q().scalar(-1), q().zero()]],
            q(),
        );
        assert_eq!(omega, expect);
        assert_eq!(omega.pow(3), Matrix::identity(2, q()).scale(&q().scalar(-1)));

        assert_eq!(t.twelve_cycle_check().unwrap(), q().one());
    }

    #[test]
    fn d2_nbg_data() {
        let t = d2_nbg_triple(q().scalar(2));
        assert_eq!(
            t.pair(0).parameter_sequence(),
            &[Scalar::from_fraction(-3, 2, q()), q().scalar(-3)]
        );
        assert_eq!(
            t.trace_data(0),
            &[
                q().scalar(3),
                Scalar::from_fraction(-3, 2, q()),
                Scalar::from_fraction(-3, 2, q())
            ]
        );
        // alpha_2 = 1/(1+q), beta_2 = q/(1+q), theta = 1/q
        assert_eq!(t.toeplitz().alpha(0)[2], Scalar::from_fraction(1, 3, q()));
        assert_eq!(t.toeplitz().beta(0)[2], Scalar::from_fraction(2, 3, q()));
        assert_eq!(t.theta(), &Scalar::from_fraction(1, 2, q()));
        let f = t.flags();
        assert!(!f.bipartite && f.equitable && f.normalized);

        // rotator matrix of the diameter-2 classification
        let omega = t.rotator().unwrap();
        let expect = Matrix::from_rows(
            vec![
                vec![q().one(), q().one(), Scalar::from_fraction(1, 3, q())],
                vec![
                    Scalar::from_fraction(-3, 2, q()),
                    q().scalar(-1),
                    q().zero(),
                ],
                vec![Scalar::from_fraction(3, 2, q()), q().zero(), q().zero()],
            ],
            q(),
        );
        assert_eq!(omega, expect);
    }

    #[test]
    fn d2_bipartite_data() {
        let t = d2_bip_triple(q().one(), q().one(), q().scalar(-1));
        let f = t.flags();
        assert!(f.bipartite && f.equitable && f.normalized);
        assert_eq!(t.pair(0).parameter_sequence(), &[q().scalar(-1), q().one()]);
        assert_eq!(t.pair(2).parameter_sequence(), &[q().one(), q().scalar(-1)]);
        for s in 0..3 {
            assert!(t.trace_data(s).iter().all(Scalar::is_zero));
        }

        let j = t.projector().unwrap();
        let jexpect = Matrix::from_fn(3, q(), |i, k| {
            if i == k && i % 2 == 0 {
                q().one()
            } else {
                q().zero()
            }
        });
        assert_eq!(t.pair(0).basis(PairBasisKind::AB).represent(&j), jexpect);

        let (oo, oi) = t.rotators_out_in().unwrap();
        let rep = |m: &Matrix| t.pair(0).basis(PairBasisKind::AB).represent(m);
        let oo_expect = Matrix::from_rows(
            vec![
                vec![q().one(), q().zero(), q().one()],
                vec![q().zero(), q().zero(), q().zero()],
                vec![q().scalar(-1), q().zero(), q().zero()],
            ],
            q(),
        );
        let oi_expect = Matrix::from_fn(3, q(), |i, k| {
            if i == 1 && k == 1 {
                q().one()
            } else {
                q().zero()
            }
        });
        assert_eq!(rep(&oo), oo_expect);
        assert_eq!(rep(&oi), oi_expect);
        assert!((&oo * &oi).is_zero() && (&oi * &oo).is_zero());
    }

    #[test]
    fn d2_printed_matrices() {
        // the tridiagonal letter of the diameter-2 classes in closed form
        let qv = q().scalar(2);
        let t = d2_nbg_triple(qv.clone());
        let qinv = qv.inverse().unwrap();
        let one = q().one();
        let expect = Matrix::from_rows(
            vec![
                vec![&one + &qv, qv.clone(), q().zero()],
                vec![-&(&one + &qv), &qinv - &qv, qinv.clone()],
                vec![q().zero(), -&(&one + &qinv), -&(&one + &qinv)],
            ],
            q(),
        );
        assert_eq!(t.c(), &expect);

        let (r0, r0p, r0pp) = (q().scalar(2), q().scalar(3), frac_(-1, 6));
        let t = d2_bip_triple(r0, r0p, r0pp.clone());
        let rpp_inv = r0pp.inverse().unwrap();
        let expect = Matrix::from_rows(
            vec![
                vec![q().zero(), rpp_inv.clone(), q().zero()],
                vec![r0pp.clone(), q().zero(), r0pp.clone()],
                vec![q().zero(), -&rpp_inv, q().zero()],
            ],
            q(),
        );
        assert_eq!(t.c(), &expect);
    }

    fn frac_(n: i64, den: i64) -> Scalar {
        Scalar::from_fraction(n, den, q())
    }

    #[test]
    fn reflector_actions_on_equitable_triples() {
        // the pair reflector of (A,B) swaps the letters and their unipotent
        // maps, fixes the third letter, the rotator, and the E_i, and
        // swaps the primed and double-primed idempotents
        let t = d2_nbg_triple(q().scalar(2));
        let p = t.pair(0);
        assert_eq!(p.reflect(t.a()), *t.b());
        assert_eq!(p.reflect(t.b()), *t.a());
        assert_eq!(p.reflect(t.c()), *t.c());
        let (ua, ub, uc) = t.unipotent_maps();
        assert_eq!(p.reflect(&ua), ub);
        assert_eq!(p.reflect(&ub), ua);
        assert_eq!(p.reflect(&uc), uc);
        let omega = t.rotator().unwrap();
        assert_eq!(p.reflect(&omega), omega);
        for i in 0..=t.diameter() {
            assert_eq!(&p.reflect(t.e(0, i)), t.e(0, i));
            assert_eq!(p.reflect(t.e(1, i)), *t.e(2, i));
            assert_eq!(p.reflect(t.e(2, i)), *t.e(1, i));
        }

        // bipartite: the outer part of one letter maps to the inner part
        // of the other, J is fixed, and the third letter twists by the
        // ratio of its boundary rho values
        let (r0, r0p, r0pp) = (q().scalar(2), q().scalar(3), frac_(-1, 6));
        let t = d2_bip_triple(r0, r0p, r0pp);
        let p = t.pair(0);
        let j = t.projector().unwrap();
        assert_eq!(p.reflect(&j), j);
        let (a_out, a_in) = (t.a() * &j, &j * t.a());
        let (b_out, b_in) = (t.b() * &j, &j * t.b());
        assert_eq!(p.reflect(&a_out), b_in);
        assert_eq!(p.reflect(&a_in), b_out);
        let (c_out, c_in) = (t.c() * &j, &j * t.c());
        let di = t.diameter() as i64;
        let rho0p = &t.phi(2, 1) / &t.phi(0, di);
        let rho0pp = &t.phi(0, 1) / &t.phi(1, di);
        assert_eq!(p.reflect(&c_out), c_in.scale(&(&rho0pp / &rho0p)));
        assert_eq!(p.reflect(&c_in), c_out.scale(&(&rho0p / &rho0pp)));
        let (oo, oi) = t.rotators_out_in().unwrap();
        assert_eq!(p.reflect(&oo), oo);
        assert_eq!(p.reflect(&oi), oi);
    }

    #[test]
    fn six_bases_alternate_toeplitz_and_antidiagonal() {
        use crate::linalg::transition_matrix;
        let t = d2_nbg_triple(q().scalar(3));
        let bases = [
            t.pair(2).basis(PairBasisKind::BA), // (A,C)
            t.pair(0).basis(PairBasisKind::AB), // (A,B)
            t.pair(0).basis(PairBasisKind::BA), // (B,A)
            t.pair(1).basis(PairBasisKind::AB), // (B,C)
            t.pair(1).basis(PairBasisKind::BA), // (C,B)
            t.pair(2).basis(PairBasisKind::AB), // (C,A)
        ];
        for k in 0..6 {
            let s = transition_matrix(&bases[k], &bases[(k + 1) % 6]);
            if k % 2 == 0 {
                assert!(
                    s.upper_toeplitz_params().is_some(),
                    "transition {k} is upper triangular Toeplitz"
                );
            } else {
                assert!(s.is_antidiagonal(), "transition {k} is antidiagonal");
            }
        }
    }

    #[test]
    fn relatives_recognized_with_expected_arrays() {
        let t = d2_nbg_triple(q().scalar(3));
        let rels = t.relatives();
        assert_eq!(rels.len(), 12);
        for (_, r) in trivial_triple().relatives() {
            assert!(r.is_trivial());
        }
    }

    #[test]
    fn centralizer_dimensions() {
        assert_eq!(trivial_triple().idempotent_centralizer_basis().len(), 1);
        let t = d2_nbg_triple(q().scalar(2));
        assert_eq!(t.idempotent_centralizer_basis().len(), 1);

        let tb = d2_bip_triple(q().one(), q().one(), q().scalar(-1));
        let basis = tb.idempotent_centralizer_basis();
        assert_eq!(basis.len(), 2);
        // the span contains J
        let j = tb.projector().unwrap();
        let n = 3;
        let sol = crate::linalg::solve_rectangular(
            n * n,
            2,
            |r, c| basis[c][(r / n, r % n)].clone(),
            &(0..n * n)
                .map(|r| j[(r / n, r % n)].clone())
                .collect::<Vec<_>>(),
            q(),
        );
        assert!(sol.is_ok());
    }

    #[test]
    fn double_lowering_dimensions() {
        assert!(trivial_triple().double_lowering_basis(0).is_empty());

        let t = d2_nbg_triple(q().scalar(2));
        let basis = t.double_lowering_basis(0);
        assert_eq!(basis.len(), 1);
        // spanned by A
        let n = 3;
        let sol = crate::linalg::solve_rectangular(
            n * n,
            1,
            |r, c| basis[c][(r / n, r % n)].clone(),
            &(0..n * n)
                .map(|r| t.a()[(r / n, r % n)].clone())
                .collect::<Vec<_>>(),
            q(),
        );
        assert!(sol.is_ok());

        let tb = d2_bip_triple(q().one(), q().one(), q().scalar(-1));
        for letter in 0..3 {
            assert_eq!(tb.double_lowering_basis(letter).len(), 2);
        }
        // the space for A is spanned by the outer and inner parts AJ, JA
        let basis = tb.double_lowering_basis(0);
        let j = tb.projector().unwrap();
        for part in [tb.a() * &j, &j * tb.a()] {
            let sol = crate::linalg::solve_rectangular(
                9,
                2,
                |r, c| basis[c][(r / 3, r % 3)].clone(),
                &(0..9).map(|r| part[(r / 3, r % 3)].clone()).collect::<Vec<_>>(),
                q(),
            );
            assert!(sol.is_ok());
        }
    }

    #[test]
    fn bipartite_halves_of_d2() {
        let t = d2_bip_triple(q().one(), q().one(), q().scalar(-1));
        let (outer, inner) = t.bipartite_halves().unwrap();
        assert_eq!(outer.diameter(), 1);
        // outer parameter sequence is {phi_1 phi_2}
        assert_eq!(outer.pair(0).parameter_sequence(), &[q().scalar(-1)]);
        assert!(!outer.flags().bipartite);
        assert!(inner.unwrap().is_trivial());
    }

    #[test]
    fn identity_suite_all_green() {
        for t in [
            trivial_triple(),
            diam1_triple(),
            d2_nbg_triple(q().scalar(2)),
            d2_bip_triple(q().one(), q().one(), q().scalar(-1)),
        ] {
            for (id, holds) in t.identity_suite() {
                assert!(holds, "identity {id} failed at d = {}", t.diameter());
            }
        }
    }

    #[test]
    fn recognition_is_basis_independent() {
        // conjugate a known triple by a generic change of basis; every
        // invariant must come out the same
        let t = d2_nbg_triple(q().scalar(2));
        let g = Matrix::from_rows(
            vec![
                vec![q().scalar(1), q().scalar(2), q().scalar(0)],
                vec![q().scalar(0), q().scalar(1), q().scalar(3)],
                vec![q().scalar(1), q().scalar(0), q().scalar(1)],
            ],
            q(),
        );
        let ginv = g.inverse().unwrap();
        let conj = |m: &Matrix| &(&g * m) * &ginv;
        let t2 = recognize_lr_triple(&conj(t.a()), &conj(t.b()), &conj(t.c())).unwrap();
        for s in 0..3 {
            assert_eq!(
                t2.pair(s).parameter_sequence(),
                t.pair(s).parameter_sequence()
            );
            assert_eq!(t2.trace_data(s), t.trace_data(s));
            assert_eq!(t2.toeplitz().alpha(s), t.toeplitz().alpha(s));
            assert_eq!(t2.toeplitz().beta(s), t.toeplitz().beta(s));
        }
        assert_eq!(t2.theta(), t.theta());
        assert_eq!(t2.flags(), t.flags());
        for (id, holds) in t2.identity_suite() {
            assert!(holds, "{id} on the conjugated triple");
        }
        // the rotator conjugates along
        assert_eq!(t2.rotator().unwrap(), conj(&t.rotator().unwrap()));
    }

    #[test]
    fn recursion_matches_transition() {
        let t = d2_nbg_triple(q().scalar(2));
        let arrays = [
            t.pair(0).parameter_sequence().to_vec(),
            t.pair(1).parameter_sequence().to_vec(),
            t.pair(2).parameter_sequence().to_vec(),
        ];
        let rec = toeplitz_data_via_recursion(&arrays, &q().one()).unwrap();
        assert_eq!(&rec, t.toeplitz());
    }

    #[test]
    fn recursion_rejects_corrupt_input() {
        let t = d2_nbg_triple(q().scalar(2));
        let mut arrays = [
            t.pair(0).parameter_sequence().to_vec(),
            t.pair(1).parameter_sequence().to_vec(),
            t.pair(2).parameter_sequence().to_vec(),
        ];
        arrays[1][0] = q().scalar(7);
        assert_eq!(
            toeplitz_data_via_recursion(&arrays, &q().one()),
            Err(TripleOpError::InconsistentData)
        );
    }

    #[test]
    fn data_types_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Scalar>();
        assert_send_sync::<Matrix>();
        assert_send_sync::<crate::lrpair::LRPairData>();
        assert_send_sync::<LRTripleData>();
        // verification across instances is safely data-parallel
        let triples = [
            diam1_triple(),
            d2_nbg_triple(q().scalar(2)),
            d2_bip_triple(q().one(), q().one(), q().scalar(-1)),
        ];
        std::thread::scope(|scope| {
            for t in &triples {
                scope.spawn(move || {
                    for (id, holds) in t.identity_suite() {
                        assert!(holds, "{id}");
                    }
                });
            }
        });
    }

    #[test]
    fn theta_of_d2_family() {
        let t = d2_nbg_triple(q().scalar(5));
        assert_eq!(t.theta(), &Scalar::from_fraction(1, 5, q()));
    }
}
