//! Constructors for the classification families, normalization, the rho
//! sequences, the constrained-sequence analyzer, and the classification
//! algorithm mapping a normalized triple to its unique family descriptor.

use crate::field::{CharConstraint, FieldSpec, Scalar};
use crate::linalg::{nullspace, Matrix};
use crate::lrtriple::{recognize_lr_triple, triple_from_data, LRTripleData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("field does not support this family: {0}")]
    FieldUnsupported(String),
    #[error("characteristic constraint violated")]
    BadCharacteristic,
    #[error("(d, q) is not a standard pair")]
    NotStandard,
    #[error("the requested index needs a square root of q that the field lacks")]
    NoSquareRoot,
    #[error("triple is not normalized")]
    NotNormalized,
    #[error("triple is not equitable")]
    NotEquitable,
    #[error("classification failed: {0}")]
    Unclassifiable(String),
}

/// A classification family with its parameters. Scalars carry the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyDescriptor {
    Trivial { field: FieldSpec },
    Diameter1 { field: FieldSpec },
    NbWeylPlus { d: usize, j: usize, q: Scalar },
    NbWeylMinusJq { d: usize, j: usize, q: Scalar },
    NbWeylMinusT { d: usize, t: Scalar },
    NbgQ { d: usize, q: Scalar },
    Nbg1 { d: usize, field: FieldSpec },
    NbngT { d: usize, t: Scalar },
    BT { d: usize, t: Scalar, rho: [Scalar; 3] },
    B1 { d: usize, rho: [Scalar; 3] },
    B2 { rho: [Scalar; 3] },
    Weyl { d: usize, field: FieldSpec },
    QWeyl { d: usize, j: usize, q: Scalar },
}

use FamilyDescriptor::*;

impl std::fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Trivial { .. } => write!(f, "trivial:d=0"),
            Diameter1 { .. } => write!(f, "diam1:d=1"),
            NbWeylPlus { d, j, q } => write!(f, "nbwp:d={d},j={j},q={q}"),
            NbWeylMinusJq { d, j, q } => write!(f, "nbwm:d={d},j={j},q={q}"),
            NbWeylMinusT { d, t } => write!(f, "nbwmt:d={d},t={t}"),
            NbgQ { d, q } => write!(f, "nbg:d={d},q={q}"),
            Nbg1 { d, .. } => write!(f, "nbg1:d={d}"),
            NbngT { d, t } => write!(f, "nbng:d={d},t={t}"),
            BT { d, t, rho } => write!(
                f,
                "b:d={d},t={t},rho0={},rho0p={},rho0pp={}",
                rho[0], rho[1], rho[2]
            ),
            B1 { d, rho } => write!(
                f,
                "b:d={d},t=1,rho0={},rho0p={},rho0pp={}",
                rho[0], rho[1], rho[2]
            ),
            B2 { rho } => write!(
                f,
                "b:d=2,rho0={},rho0p={},rho0pp={}",
                rho[0], rho[1], rho[2]
            ),
            Weyl { d, .. } => write!(f, "weyl:d={d}"),
            QWeyl { d, j, q } => write!(f, "qweyl:d={d},j={j},q={q}"),
        }
    }
}

impl FamilyDescriptor {
    pub fn field(&self) -> FieldSpec {
        match self {
            Trivial { field } | Diameter1 { field } | Nbg1 { field, .. } | Weyl { field, .. } => {
                *field
            }
            NbWeylPlus { q, .. } | NbWeylMinusJq { q, .. } | NbgQ { q, .. } | QWeyl { q, .. } => {
                q.field()
            }
            NbWeylMinusT { t, .. } | NbngT { t, .. } => t.field(),
            BT { rho, .. } | B1 { rho, .. } | B2 { rho } => rho[0].field(),
        }
    }

    pub fn diameter(&self) -> usize {
        match self {
            Trivial { .. } => 0,
            Diameter1 { .. } => 1,
            B2 { .. } => 2,
            NbWeylPlus { d, .. }
            | NbWeylMinusJq { d, .. }
            | NbWeylMinusT { d, .. }
            | NbgQ { d, .. }
            | Nbg1 { d, .. }
            | NbngT { d, .. }
            | BT { d, .. }
            | B1 { d, .. }
            | Weyl { d, .. }
            | QWeyl { d, .. } => *d,
        }
    }

    /// Parse "tag:k=v,..." against a field, e.g. "nbg:d=4,q=2".
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self, FamilyError> {
        let bad = |m: &str| FamilyError::BadParameters(m.to_string());
        let (tag, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut kv = std::collections::BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad("expected k=v parameter"))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get_usize = |key: &str| -> Result<usize, FamilyError> {
            kv.get(key)
                .ok_or_else(|| bad(&format!("missing {key}")))?
                .parse()
                .map_err(|_| bad(&format!("bad integer {key}")))
        };
        let get_scalar = |key: &str| -> Result<Scalar, FamilyError> {
            let s = kv.get(key).ok_or_else(|| bad(&format!("missing {key}")))?;
            Scalar::parse(s, field).map_err(|_| bad(&format!("bad scalar {key}")))
        };
        let desc = match tag {
            "trivial" => Trivial { field },
            "diam1" => Diameter1 { field },
            "nbwp" => NbWeylPlus {
                d: get_usize("d")?,
                j: get_usize("j")?,
                q: get_scalar("q")?,
            },
            "nbwm" => NbWeylMinusJq {
                d: get_usize("d")?,
                j: get_usize("j")?,
                q: get_scalar("q")?,
            },
            "nbwmt" => NbWeylMinusT {
                d: get_usize("d")?,
                t: get_scalar("t")?,
            },
            "nbg" => NbgQ {
                d: get_usize("d")?,
                q: get_scalar("q")?,
            },
            "nbg1" => Nbg1 {
                d: get_usize("d")?,
                field,
            },
            "nbng" => NbngT {
                d: get_usize("d")?,
                t: get_scalar("t")?,
            },
            "b" => {
                let d = get_usize("d")?;
                let rho0 = get_scalar("rho0")?;
                let rho0p = get_scalar("rho0p")?;
                // the product constraint pins the third scalar when omitted
                let target = if d == 2 || kv.get("t").map(|t| t == "1").unwrap_or(false) {
                    -field.one()
                } else {
                    let t = get_scalar("t")?;
                    -t.pow(1 - d as i64 / 2)
                };
                let rho0pp = match kv.get("rho0pp") {
                    Some(_) => get_scalar("rho0pp")?,
                    None => {
                        let denom = &rho0 * &rho0p;
                        target
                            .checked_div(&denom)
                            .map_err(|_| bad("rho0 * rho0p must be nonzero"))?
                    }
                };
                let rho = [rho0, rho0p, rho0pp];
                if d == 2 {
                    B2 { rho }
                } else if kv.get("t").map(|t| t == "1").unwrap_or(false) {
                    B1 { d, rho }
                } else {
                    let t = get_scalar("t")?;
                    if t.is_one() {
                        B1 { d, rho }
                    } else {
                        BT { d, t, rho }
                    }
                }
            }
            "weyl" => Weyl {
                d: get_usize("d")?,
                field,
            },
            "qweyl" => QWeyl {
                d: get_usize("d")?,
                j: get_usize("j")?,
                q: get_scalar("q")?,
            },
            other => return Err(bad(&format!("unknown family tag {other:?}"))),
        };
        Ok(desc)
    }

    /// Validate side conditions and produce the parameter arrays and the
    /// diagonal trace data of the canonical matrix template.
    pub fn family_data(&self) -> Result<([Vec<Scalar>; 3], Vec<Scalar>), FamilyError> {
        let field = self.field();
        let one = field.one();
        let bad = |m: String| FamilyError::BadParameters(m);
        // normalized nonbipartite trace data: a_i = phi_{d-i+1} - phi_{d-i}
        let diag_from = |phi: &[Scalar]| -> Vec<Scalar> {
            let d = phi.len();
            let at = |i: i64| {
                if i < 1 || i as usize > d {
                    field.zero()
                } else {
                    phi[i as usize - 1].clone()
                }
            };
            (0..=d as i64).map(|i| &at(d as i64 - i + 1) - &at(d as i64 - i)).collect()
        };
        let same = |phi: Vec<Scalar>| -> [Vec<Scalar>; 3] { [phi.clone(), phi.clone(), phi] };
        match self {
            Trivial { .. } => Ok((same(vec![]), vec![field.zero()])),
            Diameter1 { .. } => {
                let phi = vec![-&one];
                let diag = diag_from(&phi);
                Ok((same(phi), diag))
            }
            NbgQ { d, q } => {
                let d = *d;
                if d < 2 {
                    return Err(bad("nbg requires d >= 2".into()));
                }
                if q.is_zero() || q.is_one() {
                    return Err(bad("nbg requires q outside {0, 1}".into()));
                }
                for i in 1..=d as i64 {
                    if q.pow(i).is_one() {
                        return Err(bad(format!("nbg requires q^{i} != 1")));
                    }
                }
                if q.pow(d as i64 + 1) == -&one {
                    return Err(bad("nbg requires q^{d+1} != -1".into()));
                }
                let denom = (&(q - &one) * &(q - &one)).inverse().unwrap();
                let phi: Vec<Scalar> = (1..=d as i64)
                    .map(|i| {
                        let lhs = &q.pow(i) - &one;
                        let rhs = &q.pow(i - d as i64 - 1) - &one;
                        &(&(q * &lhs) * &rhs) * &denom
                    })
                    .collect();
                let diag = diag_from(&phi);
                Ok((same(phi), diag))
            }
            Nbg1 { d, field } => {
                let d = *d;
                if d < 2 {
                    return Err(bad("nbg requires d >= 2".into()));
                }
                if !field.characteristic_ok(CharConstraint::ZeroOrGreaterThan(d as u64)) {
                    return Err(FamilyError::BadCharacteristic);
                }
                let phi: Vec<Scalar> = (1..=d as i64)
                    .map(|i| &field.scalar(i) * &field.scalar(i - d as i64 - 1))
                    .collect();
                let diag = diag_from(&phi);
                Ok((same(phi), diag))
            }
            NbngT { d, t } => {
                let d = *d;
                if d < 4 || d % 2 != 0 {
                    return Err(bad("nbng requires even d >= 4".into()));
                }
                if t.is_zero() {
                    return Err(bad("nbng requires t != 0".into()));
                }
                for i in 1..=(d as i64) / 2 {
                    if t.pow(i).is_one() {
                        return Err(bad(format!("nbng requires t^{i} != 1")));
                    }
                }
                if t.pow(d as i64 + 1).is_one() {
                    return Err(bad("nbng requires t^{d+1} != 1".into()));
                }
                let phi: Vec<Scalar> = (1..=d as i64)
                    .map(|i| {
                        if i % 2 == 0 {
                            &t.pow(i / 2) - &one
                        } else {
                            &t.pow((i - d as i64 - 1) / 2) - &one
                        }
                    })
                    .collect();
                let diag = diag_from(&phi);
                Ok((same(phi), diag))
            }
            BT { d, t, rho } => {
                let d = *d;
                if d < 4 || d % 2 != 0 {
                    return Err(bad("b with t != 1 requires even d >= 4".into()));
                }
                if t.is_zero() || t.is_one() {
                    return Err(bad("b requires t outside {0, 1}".into()));
                }
                for i in 1..=(d as i64) / 2 {
                    if t.pow(i).is_one() {
                        return Err(bad(format!("b requires t^{i} != 1")));
                    }
                }
                if rho.iter().any(Scalar::is_zero) {
                    return Err(bad("b requires nonzero rho parameters".into()));
                }
                let prod = &(&rho[0] * &rho[1]) * &rho[2];
                if prod != -t.pow(1 - d as i64 / 2) {
                    return Err(bad("b requires rho0 rho0p rho0pp = -t^{1-d/2}".into()));
                }
                let geom = (&one - t).inverse().unwrap();
                let mk = |r: &Scalar| -> Vec<Scalar> {
                    (1..=d as i64)
                        .map(|i| {
                            if i % 2 == 0 {
                                &(r * &(&one - &t.pow(i / 2))) * &geom
                            } else {
                                let lead = t.checked_div(r).unwrap();
                                &(&lead * &(&one - &t.pow((i - d as i64 - 1) / 2))) * &geom
                            }
                        })
                        .collect()
                };
                let arrays = [mk(&rho[0]), mk(&rho[1]), mk(&rho[2])];
                let diag = vec![field.zero(); d + 1];
                Ok((arrays, diag))
            }
            B1 { d, rho } => {
                let d = *d;
                if d < 4 || d % 2 != 0 {
                    return Err(bad("b with t = 1 requires even d >= 4".into()));
                }
                if field.characteristic() == 2
                    || !field.characteristic_ok(CharConstraint::ZeroOrGreaterThan(d as u64 / 2))
                {
                    return Err(FamilyError::BadCharacteristic);
                }
                if rho.iter().any(Scalar::is_zero) {
                    return Err(bad("b requires nonzero rho parameters".into()));
                }
                let prod = &(&rho[0] * &rho[1]) * &rho[2];
                if prod != -&one {
                    return Err(bad("b with t = 1 requires rho0 rho0p rho0pp = -1".into()));
                }
                let half = field.scalar(2).inverse().unwrap();
                let mk = |r: &Scalar| -> Vec<Scalar> {
                    (1..=d as i64)
                        .map(|i| {
                            if i % 2 == 0 {
                                &(&field.scalar(i) * r) * &half
                            } else {
                                &(&field.scalar(i - d as i64 - 1) * &half) / r
                            }
                        })
                        .collect()
                };
                let arrays = [mk(&rho[0]), mk(&rho[1]), mk(&rho[2])];
                let diag = vec![field.zero(); d + 1];
                Ok((arrays, diag))
            }
            B2 { rho } => {
                if rho.iter().any(Scalar::is_zero) {
                    return Err(bad("b requires nonzero rho parameters".into()));
                }
                let prod = &(&rho[0] * &rho[1]) * &rho[2];
                if prod != -&one {
                    return Err(bad("b with d = 2 requires rho0 rho0p rho0pp = -1".into()));
                }
                let mk = |r: &Scalar| vec![-&r.inverse().unwrap(), r.clone()];
                let arrays = [mk(&rho[0]), mk(&rho[1]), mk(&rho[2])];
                Ok((arrays, vec![field.zero(); 3]))
            }
            NbWeylPlus { d, j, q } => {
                let d = *d;
                if d < 2 || d % 2 != 0 {
                    return Err(bad("nbwp requires even d >= 2".into()));
                }
                if *j >= d / 2 {
                    return Err(bad("nbwp requires 0 <= j < d/2".into()));
                }
                let phi = nbweyl_phi(d, *j, q)?;
                let diag = diag_from(&phi);
                Ok((same(phi), diag))
            }
            NbWeylMinusJq { d, j, q } => {
                let d = *d;
                if field.characteristic() == 2 {
                    return Err(FamilyError::BadCharacteristic);
                }
                if d < 3 || d % 2 != 1 {
                    return Err(bad("nbwm requires odd d >= 3".into()));
                }
                if 4 * *j >= d - 1 {
                    return Err(bad("nbwm requires 0 <= j < (d-1)/4".into()));
                }
                let phi = nbweyl_phi(d, *j, q)?;
                let diag = diag_from(&phi);
                Ok((same(phi), diag))
            }
            NbWeylMinusT { d, t } => {
                let d = *d;
                if field.characteristic() == 2 {
                    return Err(FamilyError::BadCharacteristic);
                }
                if d < 5 || d % 4 != 1 {
                    return Err(bad("nbwmt requires d = 1 mod 4, d >= 5".into()));
                }
                if t.multiplicative_order() != Some(d as u64 + 1) {
                    return Err(FamilyError::FieldUnsupported(format!(
                        "t must be a primitive {}-root of unity",
                        d + 1
                    )));
                }
                let coeff = {
                    let diff = &one - t;
                    &(&field.scalar(2) * t) / &(&diff * &diff)
                };
                let phi: Vec<Scalar> = (1..=d as i64)
                    .map(|i| &coeff * &(&one - &t.pow(i)))
                    .collect();
                let diag = diag_from(&phi);
                Ok((same(phi), diag))
            }
            Weyl { d, field } => {
                let d = *d;
                let p = d as u64 + 1;
                if !crate::field::is_prime(p) || field.characteristic() != p {
                    return Err(FamilyError::BadCharacteristic);
                }
                let phi: Vec<Scalar> = (1..=d as i64).map(|i| field.scalar(i)).collect();
                // alpha_1 = 1 when d = 1, else 0
                let alpha1 = if d == 1 { field.one() } else { field.zero() };
                let at = |i: i64| {
                    if i < 1 || i as usize > d {
                        field.zero()
                    } else {
                        phi[i as usize - 1].clone()
                    }
                };
                let diag: Vec<Scalar> = (0..=d as i64)
                    .map(|i| &alpha1 * &(&at(d as i64 - i + 1) - &at(d as i64 - i)))
                    .collect();
                Ok((same(phi), diag))
            }
            QWeyl { d, j, q } => {
                let d = *d;
                if *j > d {
                    return Err(bad("qweyl requires 0 <= j <= d".into()));
                }
                check_standard(d, q)?;
                let jj = *j as i64;
                let qinv = q.inverse().unwrap();
                let denom = q - &qinv;
                // alpha_1 = (q^{j+1/2} + q^{-j-1/2})/(q - q^{-1}); without a
                // square root of q in the field the value lies in the field
                // only when q^{2j+1} = -1, where it vanishes
                let alpha1 = match q.sqrt_candidates().first() {
                    Some(s) => &(&s.pow(2 * jj + 1) + &s.pow(-2 * jj - 1)) / &denom,
                    None => {
                        if q.pow(2 * jj + 1) == -&one {
                            field.zero()
                        } else {
                            return Err(FamilyError::NoSquareRoot);
                        }
                    }
                };
                let phi: Vec<Scalar> = (1..=d as i64).map(|i| &one - &q.pow(-2 * i)).collect();
                let diag: Vec<Scalar> = (0..=d as i64)
                    .map(|i| &(&alpha1 * &q.pow(2 * i + 1)) * &denom)
                    .collect();
                Ok((same(phi), diag))
            }
        }
    }

    /// Build the triple, recognize it, and confirm the advertised data.
    pub fn construct(&self) -> Result<LRTripleData, FamilyError> {
        let (arrays, diag) = self.family_data()?;
        let field = self.field();
        let (a, b, c) = triple_from_data(&arrays, &diag, field);
        let t = recognize_lr_triple(&a, &b, &c).map_err(|e| {
            FamilyError::Unclassifiable(format!("constructed triple failed recognition: {e}"))
        })?;
        for s in 0..3 {
            assert_eq!(
                t.pair(s).parameter_sequence(),
                &arrays[s][..],
                "constructed parameter array"
            );
        }
        let flags = t.flags();
        match self {
            Trivial { .. } | B2 { .. } | BT { .. } | B1 { .. } => {
                assert!(flags.bipartite && flags.normalized);
            }
            Diameter1 { .. }
            | NbgQ { .. }
            | Nbg1 { .. }
            | NbngT { .. }
            | NbWeylPlus { .. }
            | NbWeylMinusJq { .. }
            | NbWeylMinusT { .. } => {
                assert!(!flags.bipartite && flags.normalized && flags.equitable);
            }
            Weyl { d, .. } => {
                assert!(flags.equitable);
                assert_eq!(flags.bipartite, *d >= 2);
                // second construction route: C = alpha_1 I - A - B
                let alpha1 = if *d == 1 { field.one() } else { field.zero() };
                let c_alt = &(&Matrix::identity(d + 1, field).scale(&alpha1) - &a) - &b;
                assert_eq!(c, c_alt, "the two constructions agree");
            }
            QWeyl { d, q, .. } => {
                // the defining relations hold for the requested q
                let qinv = q.inverse().unwrap();
                let denom = (&(q - &qinv)).inverse().unwrap();
                let ident = Matrix::identity(d + 1, field);
                for (x, y) in [(&a, &b), (&b, &c), (&c, &a)] {
                    let lhs = &(x * y).scale(q) - &(y * x).scale(&qinv);
                    assert_eq!(lhs.scale(&denom), ident, "q-Weyl relation");
                }
            }
        }
        Ok(t)
    }
}

fn nbweyl_phi(d: usize, j: usize, q: &Scalar) -> Result<Vec<Scalar>, FamilyError> {
    let field = q.field();
    let one = field.one();
    check_standard(d, q)?;
    let jj = j as i64;
    let qpow = q.pow(2 * jj + 1);
    let lead = &one + &qpow;
    if lead.is_zero() {
        return Err(FamilyError::BadParameters(
            "1 + q^{2j+1} must be nonzero".into(),
        ));
    }
    let diff = q - &q.inverse().unwrap();
    let denom = (&qpow * &(&diff * &diff)).inverse().unwrap();
    let coeff = &(&lead * &lead) * &denom;
    Ok((1..=d as i64)
        .map(|i| &coeff * &(&one - &q.pow(-2 * i)))
        .collect())
}

/// The pair (d, q) is standard: d >= 1 and q is a primitive (2d+2)-root of
/// unity (characteristic not 2), or d even and q a primitive (d+1)-root
/// (characteristic 2).
fn check_standard(d: usize, q: &Scalar) -> Result<(), FamilyError> {
    if d < 1 || q.is_zero() {
        return Err(FamilyError::NotStandard);
    }
    let want = if q.field().characteristic() == 2 {
        if d % 2 != 0 {
            return Err(FamilyError::NotStandard);
        }
        d as u64 + 1
    } else {
        2 * d as u64 + 2
    };
    if q.multiplicative_order() != Some(want) {
        return Err(FamilyError::NotStandard);
    }
    Ok(())
}

/// How a triple was rescaled during normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizationReport {
    /// Already trivial; nothing to do.
    Trivial,
    /// Nonbipartite: (alpha A, beta B, gamma C).
    Scaled { alpha: Scalar, beta: Scalar, gamma: Scalar },
    /// Bipartite nontrivial: outer parts scaled, inner parts kept.
    OuterScaled { alpha: Scalar, beta: Scalar, gamma: Scalar },
}

/// Rescale a triple to its unique normalized form.
pub fn normalize(t: &LRTripleData) -> (LRTripleData, NormalizationReport) {
    if t.is_trivial() {
        return (t.clone(), NormalizationReport::Trivial);
    }
    let flags = t.flags();
    if !flags.bipartite {
        let alpha = t.toeplitz().alpha(1)[1].clone();
        let beta = t.toeplitz().alpha(2)[1].clone();
        let gamma = t.toeplitz().alpha(0)[1].clone();
        let nt = recognize_lr_triple(
            &t.a().scale(&alpha),
            &t.b().scale(&beta),
            &t.c().scale(&gamma),
        )
        .expect("scaled triple is an LR triple");
        assert!(nt.flags().normalized);
        return (nt, NormalizationReport::Scaled { alpha, beta, gamma });
    }
    let alpha = t.toeplitz().alpha(1)[2].clone();
    let beta = t.toeplitz().alpha(2)[2].clone();
    let gamma = t.toeplitz().alpha(0)[2].clone();
    let j = t.projector().expect("bipartite triple has a projector");
    let mix = |x: &Matrix, s: &Scalar| {
        // s * X_out + X_in = s X J + J X
        &(x * &j).scale(s) + &(&j * x)
    };
    let nt = recognize_lr_triple(
        &mix(t.a(), &alpha),
        &mix(t.b(), &beta),
        &mix(t.c(), &gamma),
    )
    .expect("outer-rescaled triple is an LR triple");
    assert!(nt.flags().normalized);
    (nt, NormalizationReport::OuterScaled { alpha, beta, gamma })
}

/// The rho sequences of an equitable triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoSequences {
    /// Nonbipartite: a single sequence rho_i = phi_{i+1}/phi_{d-i}.
    Single(Vec<Scalar>),
    /// Bipartite: (rho, rho', rho'').
    Triple([Vec<Scalar>; 3]),
}

pub fn rho_sequence(t: &LRTripleData) -> Result<RhoSequences, FamilyError> {
    let flags = t.flags();
    if !flags.equitable {
        return Err(FamilyError::NotEquitable);
    }
    let d = t.diameter();
    if d == 0 {
        return Err(FamilyError::BadParameters(
            "rho sequences require d >= 1".into(),
        ));
    }
    let di = d as i64;
    if !flags.bipartite {
        let rho: Vec<Scalar> = (0..di)
            .map(|i| &t.phi(0, i + 1) / &t.phi(0, di - i))
            .collect();
        for i in 0..d {
            assert!((&rho[i] * &rho[d - 1 - i]).is_one());
        }
        return Ok(RhoSequences::Single(rho));
    }
    // bipartite: each sequence has two equal defining expressions
    let seq = |num: usize, den: usize, num2: usize, den2: usize| -> Vec<Scalar> {
        (0..di)
            .map(|i| {
                let first = &t.phi(num, i + 1) / &t.phi(den, di - i);
                let second = &t.phi(num2, i + 1) / &t.phi(den2, di - i);
                assert_eq!(first, second, "rho expressions agree");
                first
            })
            .collect()
    };
    let rho = seq(1, 2, 2, 1);
    let rho_p = seq(2, 0, 0, 2);
    let rho_pp = seq(0, 1, 1, 0);
    Ok(RhoSequences::Triple([rho, rho_p, rho_pp]))
}

/// Classification of a constrained sequence by its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstrainedKind {
    /// Even length - 1: rho_i = epsilon r^{i - n/2} with epsilon = +-1.
    GeometricEven { epsilon: Scalar, r: Scalar },
    /// Odd n, not geometric: rho_i = xi s^{i/2} (even i),
    /// xi^{-1} s^{(i-n)/2} (odd i).
    OddNonGeometric { xi: Scalar, s: Scalar },
    /// Odd n, geometric: rho_i = t^{2i - n}.
    OddGeometric { t: Scalar },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedForm {
    pub kind: ConstrainedKind,
    pub n: usize,
    /// Dimension of the space of linear constraints (a, b, c).
    pub lc_dimension: usize,
}

impl ConstrainedForm {
    /// Rebuild the sequence from the recovered parameters.
    pub fn reconstruct(&self) -> Vec<Scalar> {
        let n = self.n as i64;
        match &self.kind {
            ConstrainedKind::GeometricEven { epsilon, r } => (0..=n)
                .map(|i| epsilon * &r.pow(i - n / 2))
                .collect(),
            ConstrainedKind::OddNonGeometric { xi, s } => (0..=n)
                .map(|i| {
                    if i % 2 == 0 {
                        xi * &s.pow(i / 2)
                    } else {
                        &xi.inverse().unwrap() * &s.pow((i - n) / 2)
                    }
                })
                .collect(),
            ConstrainedKind::OddGeometric { t } => (0..=n).map(|i| t.pow(2 * i - n)).collect(),
        }
    }
}

/// Decide whether a sequence of nonzero scalars is constrained, and if so
/// recover the generating parameters and the linear-constraint dimension.
pub fn analyze_constrained(rho: &[Scalar]) -> Option<ConstrainedForm> {
    assert!(!rho.is_empty() && rho.iter().all(|r| !r.is_zero()));
    let n = rho.len() - 1;
    let field = rho[0].field();
    for i in 0..=n {
        if !(&rho[i] * &rho[n - i]).is_one() {
            return None;
        }
    }
    // linear-constraint space of the three-term recurrence
    let lc_rows = n.saturating_sub(1);
    let lc_dimension = nullspace(
        lc_rows,
        3,
        |r, c| rho[r + c].clone(),
        field,
    )
    .len();
    if lc_dimension == 0 {
        return None;
    }
    let matches = |form: &ConstrainedForm| form.reconstruct() == rho;
    if n % 2 == 0 {
        let r = if n == 0 {
            field.one()
        } else {
            &rho[1] / &rho[0]
        };
        let form = ConstrainedForm {
            kind: ConstrainedKind::GeometricEven {
                epsilon: rho[n / 2].clone(),
                r,
            },
            n,
            lc_dimension,
        };
        return matches(&form).then_some(form);
    }
    // odd n: geometric first
    let geometric = (1..=n).all(|i| &rho[i] / &rho[i - 1] == &rho[1] / &rho[0]);
    if geometric {
        let form = ConstrainedForm {
            kind: ConstrainedKind::OddGeometric {
                t: rho[(n + 1) / 2].clone(),
            },
            n,
            lc_dimension,
        };
        return matches(&form).then_some(form);
    }
    if n < 3 {
        return None;
    }
    let form = ConstrainedForm {
        kind: ConstrainedKind::OddNonGeometric {
            xi: rho[0].clone(),
            s: &rho[2] / &rho[0],
        },
        n,
        lc_dimension,
    };
    matches(&form).then_some(form)
}

/// Membership tests for the four classification families of normalized
/// triples with d >= 2. Exactly one holds for each such triple.
pub fn family_memberships(t: &LRTripleData) -> Result<[bool; 4], FamilyError> {
    if !t.flags().normalized {
        return Err(FamilyError::NotNormalized);
    }
    let d = t.diameter();
    if d < 2 {
        return Err(FamilyError::BadParameters(
            "membership tests require d >= 2".into(),
        ));
    }
    if t.flags().bipartite {
        return Ok([false, false, false, true]);
    }
    let nbweyl = !nbweyl_constraints(t).is_empty();
    if nbweyl {
        return Ok([true, false, false, false]);
    }
    let rho = match rho_sequence(t)? {
        RhoSequences::Single(r) => r,
        RhoSequences::Triple(_) => unreachable!("nonbipartite"),
    };
    let geometric = (1..rho.len()).all(|i| &rho[i] / &rho[i - 1] == &rho[1] / &rho[0]);
    if geometric {
        Ok([false, true, false, false])
    } else {
        Ok([false, false, true, false])
    }
}

/// Nonzero solutions (a, b, c) of a + b + c = 0 and
/// a phi_{i-1} + b phi_i + c phi_{i+1} = 0 for 1 <= i <= d.
fn nbweyl_constraints(t: &LRTripleData) -> Vec<Vec<Scalar>> {
    let d = t.diameter() as i64;
    let field = t.field();
    let rows = d as usize + 1;
    nullspace(
        rows,
        3,
        |r, c| {
            if r == 0 {
                field.one()
            } else {
                t.phi(0, r as i64 - 1 + c as i64)
            }
        },
        field,
    )
}

/// Classify a normalized triple into its unique family, then confirm the
/// answer by reconstructing the family and comparing parameter arrays.
pub fn classify(t: &LRTripleData) -> Result<FamilyDescriptor, FamilyError> {
    if !t.flags().normalized {
        return Err(FamilyError::NotNormalized);
    }
    let desc = classify_inner(t)?;
    // round-trip confirmation
    let rebuilt = desc.construct()?;
    for s in 0..3 {
        if rebuilt.pair(s).parameter_sequence() != t.pair(s).parameter_sequence() {
            return Err(FamilyError::Unclassifiable(format!(
                "parameter array mismatch against {desc}"
            )));
        }
    }
    if rebuilt.toeplitz().alpha(0) != t.toeplitz().alpha(0) {
        return Err(FamilyError::Unclassifiable(format!(
            "Toeplitz data mismatch against {desc}"
        )));
    }
    Ok(desc)
}

fn classify_inner(t: &LRTripleData) -> Result<FamilyDescriptor, FamilyError> {
    let d = t.diameter();
    let field = t.field();
    let one = field.one();
    if d == 0 {
        return Ok(Trivial { field });
    }
    if d == 1 {
        return Ok(Diameter1 { field });
    }
    if t.flags().bipartite {
        let rho = match rho_sequence(t)? {
            RhoSequences::Triple(r) => r,
            RhoSequences::Single(_) => unreachable!("bipartite"),
        };
        let rho0 = [rho[0][0].clone(), rho[1][0].clone(), rho[2][0].clone()];
        if d == 2 {
            return Ok(B2 { rho: rho0 });
        }
        let tpar = &rho[0][2] / &rho[0][0];
        if tpar.is_one() {
            return Ok(B1 { d, rho: rho0 });
        }
        return Ok(BT {
            d,
            t: tpar,
            rho: rho0,
        });
    }
    // nonbipartite: linear-recurrence membership first
    let constraints = nbweyl_constraints(t);
    if !constraints.is_empty() {
        let v = &constraints[0];
        let (a, c) = (&v[0], &v[2]);
        if a.is_zero() || c.is_zero() {
            return Err(FamilyError::Unclassifiable(
                "degenerate linear recurrence".into(),
            ));
        }
        let tpar = a / c;
        if tpar.is_one() {
            return Err(FamilyError::Unclassifiable(
                "recurrence root collision".into(),
            ));
        }
        let u = &t.phi(0, 1) / &(&one - &tpar);
        // the half-period family: u = 2t/(1-t)^2 with t of order d+1
        if d % 4 == 1 {
            let diff = &one - &tpar;
            let expect = &(&field.scalar(2) * &tpar) / &(&diff * &diff);
            if u == expect && tpar.multiplicative_order() == Some(d as u64 + 1) {
                return Ok(NbWeylMinusT { d, t: tpar });
            }
        }
        // otherwise q in the field with q^2 = 1/t
        let tinv = tpar.inverse().unwrap();
        for q in tinv.sqrt_candidates() {
            if check_standard(d, &q).is_err() {
                continue;
            }
            let qinv = q.inverse().unwrap();
            let diff = &q - &qinv;
            for j in 0..=(d / 2) {
                let jj = j as i64;
                let qpow = q.pow(2 * jj + 1);
                let lead = &one + &qpow;
                if lead.is_zero() {
                    continue;
                }
                let expect = &(&lead * &lead) / &(&qpow * &(&diff * &diff));
                if u != expect {
                    continue;
                }
                if d % 2 == 0 && j < d / 2 {
                    return Ok(NbWeylPlus { d, j, q });
                }
                if d % 2 == 1 && 4 * j < d - 1 {
                    return Ok(NbWeylMinusJq { d, j, q });
                }
            }
        }
        return Err(FamilyError::Unclassifiable(
            "linear recurrence holds but no standard parameters found".into(),
        ));
    }
    // geometric test on the rho sequence
    let rho = match rho_sequence(t)? {
        RhoSequences::Single(r) => r,
        RhoSequences::Triple(_) => unreachable!("nonbipartite"),
    };
    let geometric = (1..rho.len()).all(|i| &rho[i] / &rho[i - 1] == &rho[1] / &rho[0]);
    if geometric {
        let alpha2 = t.toeplitz().alpha(0)[2].clone();
        if alpha2.is_zero() {
            return Err(FamilyError::Unclassifiable(
                "alpha_2 = 0 on a recognized normalized triple".into(),
            ));
        }
        let qpar = &t.toeplitz().beta(0)[2] / &alpha2;
        if qpar.is_one() {
            return Ok(Nbg1 { d, field });
        }
        return Ok(NbgQ { d, q: qpar });
    }
    if d % 2 != 0 || d < 4 {
        return Err(FamilyError::Unclassifiable(
            "non-geometric rho sequence at an invalid diameter".into(),
        ));
    }
    let tpar = &rho[2] / &rho[0];
    Ok(NbngT { d, t: tpar })
}

/// Smallest prime p such that GF(p) has a primitive n-th root of unity
/// and p exceeds the given floor (used for characteristic constraints).
pub fn smallest_prime_with_root(n: u64, floor: u64) -> u64 {
    let mut p = 2u64;
    loop {
        if p > floor && crate::field::is_prime(p) && (p - 1) % n == 0 {
            return p;
        }
        p += 1;
    }
}

/// Deterministic field suggestion for a family tag at diameter d: the
/// rationals unless the family needs roots of unity or a fixed
/// characteristic.
pub fn suggest_field(tag: &str, d: usize) -> Option<FieldSpec> {
    let du = d as u64;
    match tag {
        "weyl" => FieldSpec::gfp(du + 1).ok(),
        "nbwp" | "nbwm" | "qweyl" => {
            FieldSpec::gfp(smallest_prime_with_root(2 * du + 2, 2)).ok()
        }
        "nbwmt" => FieldSpec::gfp(smallest_prime_with_root(du + 1, 2)).ok(),
        _ => Some(FieldSpec::Rationals),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn frac(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(n, d, q())
    }

    #[test]
    fn nbg_d2_q2_parameters() {
        let desc = NbgQ {
            d: 2,
            q: q().scalar(2),
        };
        let t = desc.construct().unwrap();
        assert_eq!(
            t.pair(0).parameter_sequence(),
            &[frac(-3, 2), q().scalar(-3)]
        );
    }

    #[test]
    fn nbng_d4_t2_parameters() {
        let desc = NbngT {
            d: 4,
            t: q().scalar(2),
        };
        let t = desc.construct().unwrap();
        assert_eq!(
            t.pair(0).parameter_sequence(),
            &[frac(-3, 4), q().one(), frac(-1, 2), q().scalar(3)]
        );
    }

    #[test]
    fn b2_parameters() {
        let desc = B2 {
            rho: [q().one(), q().one(), q().scalar(-1)],
        };
        let t = desc.construct().unwrap();
        assert_eq!(t.pair(0).parameter_sequence(), &[q().scalar(-1), q().one()]);
        assert_eq!(t.pair(1).parameter_sequence(), &[q().scalar(-1), q().one()]);
        assert_eq!(t.pair(2).parameter_sequence(), &[q().one(), q().scalar(-1)]);
    }

    #[test]
    fn nbg_bad_parameters_rejected() {
        assert!(matches!(
            FamilyDescriptor::parse("nbg:d=2,q=1", q()).unwrap().construct(),
            Err(FamilyError::BadParameters(_))
        ));
        let desc = NbgQ {
            d: 2,
            q: q().one(),
        };
        assert!(matches!(
            desc.construct(),
            Err(FamilyError::BadParameters(_))
        ));
        let desc = NbgQ {
            d: 2,
            q: q().scalar(-1),
        };
        assert!(desc.construct().is_err());
    }

    #[test]
    fn weyl_construction() {
        let f3 = FieldSpec::gfp(3).unwrap();
        let t = Weyl { d: 2, field: f3 }.construct().unwrap();
        assert_eq!(t.pair(0).parameter_sequence(), &[f3.one(), f3.scalar(2)]);
        // A + B + C = 0
        let sum = &(t.a() + t.b()) + t.c();
        assert!(sum.is_zero());

        let f5 = FieldSpec::gfp(5).unwrap();
        let t = Weyl { d: 4, field: f5 }.construct().unwrap();
        // alpha_2 = -1/2 = 2 over GF(5)
        assert_eq!(t.toeplitz().alpha(0)[2], f5.scalar(2));

        assert!(matches!(
            Weyl { d: 2, field: f5 }.construct(),
            Err(FamilyError::BadCharacteristic)
        ));
    }

    #[test]
    fn weyl_d1_over_gf2() {
        let f2 = FieldSpec::gfp(2).unwrap();
        let t = Weyl { d: 1, field: f2 }.construct().unwrap();
        assert_eq!(t.pair(0).parameter_sequence(), &[f2.one()]);
        let flags = t.flags();
        assert!(!flags.bipartite && flags.normalized);
        // the unique normalized diameter-1 class
        assert!(matches!(classify(&t).unwrap(), Diameter1 { .. }));
        for (id, holds) in t.identity_suite() {
            assert!(holds, "{id}");
        }
    }

    #[test]
    fn qweyl_gf7() {
        let f7 = FieldSpec::gfp(7).unwrap();
        // q = 3 has no square root mod 7, so only the vanishing middle
        // index j = d/2 is realizable over the base field
        let t = QWeyl {
            d: 2,
            j: 1,
            q: f7.scalar(3),
        }
        .construct()
        .unwrap();
        assert_eq!(t.pair(0).parameter_sequence(), &[f7.scalar(4), f7.scalar(6)]);
        assert!(matches!(
            QWeyl {
                d: 2,
                j: 0,
                q: f7.scalar(3)
            }
            .construct(),
            Err(FamilyError::NoSquareRoot)
        ));
    }

    #[test]
    fn qweyl_gf17_with_square_root() {
        // q = 4 has order 4 = 2d+2 for d = 1 and sqrt(4) = 2 exists
        let f = FieldSpec::gfp(17).unwrap();
        for j in 0..=1 {
            let t = QWeyl {
                d: 1,
                j,
                q: f.scalar(4),
            }
            .construct()
            .unwrap();
            assert_eq!(t.diameter(), 1);
            assert!(!t.flags().bipartite);
        }
    }

    #[test]
    fn qweyl_not_standard_rejected() {
        let f7 = FieldSpec::gfp(7).unwrap();
        // 2 has order 3 mod 7
        assert!(matches!(
            QWeyl {
                d: 2,
                j: 0,
                q: f7.scalar(2)
            }
            .construct(),
            Err(FamilyError::NotStandard)
        ));
    }

    #[test]
    fn normalize_roundtrip_nonbipartite() {
        let desc = NbgQ {
            d: 3,
            q: q().scalar(2),
        };
        let t = desc.construct().unwrap();
        let scaled = recognize_lr_triple(
            &t.a().scale(&q().scalar(2)),
            t.b(),
            &t.c().scale(&frac(1, 3)),
        )
        .unwrap();
        assert!(!scaled.flags().normalized);
        let (nt, report) = normalize(&scaled);
        assert!(nt.flags().normalized);
        assert!(matches!(report, NormalizationReport::Scaled { .. }));
        for s in 0..3 {
            assert_eq!(
                nt.pair(s).parameter_sequence(),
                t.pair(s).parameter_sequence()
            );
        }
        // already normalized input: identity scalings
        let (again, report) = normalize(&nt);
        match report {
            NormalizationReport::Scaled { alpha, beta, gamma } => {
                assert!(alpha.is_one() && beta.is_one() && gamma.is_one());
            }
            other => panic!("unexpected report {other:?}"),
        }
        for s in 0..3 {
            assert_eq!(
                again.pair(s).parameter_sequence(),
                nt.pair(s).parameter_sequence()
            );
        }
    }

    #[test]
    fn normalize_bipartite_weyl_d4() {
        // the d = 4 map triple over GF(5) is bipartite and not normalized;
        // normalization lands in the bipartite family with t = 1
        let f5 = FieldSpec::gfp(5).unwrap();
        let t = Weyl { d: 4, field: f5 }.construct().unwrap();
        assert!(t.flags().bipartite && !t.flags().normalized);
        let (nt, report) = normalize(&t);
        assert!(matches!(report, NormalizationReport::OuterScaled { .. }));
        assert!(nt.flags().normalized && nt.flags().bipartite);
        let desc = classify(&nt).unwrap();
        match desc {
            B1 { d, rho } => {
                assert_eq!(d, 4);
                assert!(rho.iter().all(|r| r == &f5.scalar(-1)));
            }
            other => panic!("expected the t = 1 bipartite family, got {other}"),
        }
    }

    #[test]
    fn rho_sequences_examples() {
        let t = NbgQ {
            d: 2,
            q: q().scalar(2),
        }
        .construct()
        .unwrap();
        match rho_sequence(&t).unwrap() {
            RhoSequences::Single(rho) => {
                assert_eq!(rho, vec![frac(1, 2), q().scalar(2)]);
            }
            _ => panic!("nonbipartite"),
        }

        let t = B2 {
            rho: [q().one(), q().one(), q().scalar(-1)],
        }
        .construct()
        .unwrap();
        match rho_sequence(&t).unwrap() {
            RhoSequences::Triple([r, rp, rpp]) => {
                assert_eq!(r, vec![q().one(), q().one()]);
                assert_eq!(rp, vec![q().one(), q().one()]);
                assert_eq!(rpp, vec![q().scalar(-1), q().scalar(-1)]);
            }
            _ => panic!("bipartite"),
        }
    }

    #[test]
    fn analyze_constrained_examples() {
        // n = 2 geometric
        let rho = vec![frac(1, 2), q().one(), q().scalar(2)];
        let form = analyze_constrained(&rho).unwrap();
        assert_eq!(form.lc_dimension, 2);
        match form.kind {
            ConstrainedKind::GeometricEven { epsilon, r } => {
                assert!(epsilon.is_one());
                assert_eq!(r, q().scalar(2));
            }
            other => panic!("unexpected {other:?}"),
        }

        // n = 3 non-geometric: xi = 2, s = 3
        let rho = vec![q().scalar(2), frac(1, 6), q().scalar(6), frac(1, 2)];
        let form = analyze_constrained(&rho).unwrap();
        assert_eq!(form.lc_dimension, 1);
        match form.kind {
            ConstrainedKind::OddNonGeometric { xi, s } => {
                assert_eq!(xi, q().scalar(2));
                assert_eq!(s, q().scalar(3));
            }
            other => panic!("unexpected {other:?}"),
        }

        // n = 3 geometric with t = 2
        let rho = vec![frac(1, 8), frac(1, 2), q().scalar(2), q().scalar(8)];
        let form = analyze_constrained(&rho).unwrap();
        assert_eq!(form.lc_dimension, 2);
        match form.kind {
            ConstrainedKind::OddGeometric { t } => assert_eq!(t, q().scalar(2)),
            other => panic!("unexpected {other:?}"),
        }

        // perturbation breaks the reciprocity condition
        let rho = vec![frac(1, 2), q().scalar(3), q().scalar(2)];
        assert!(analyze_constrained(&rho).is_none());
    }

    #[test]
    fn classify_round_trips() {
        let descriptors: Vec<FamilyDescriptor> = vec![
            Trivial { field: q() },
            Diameter1 { field: q() },
            NbgQ {
                d: 2,
                q: q().scalar(2),
            },
            NbgQ {
                d: 4,
                q: q().scalar(3),
            },
            Nbg1 { d: 3, field: q() },
            NbngT {
                d: 4,
                t: q().scalar(2),
            },
            B2 {
                rho: [q().one(), q().one(), q().scalar(-1)],
            },
            B1 {
                d: 4,
                rho: [q().one(), q().scalar(2), frac(-1, 2)],
            },
            BT {
                d: 4,
                t: q().scalar(2),
                rho: [q().one(), q().scalar(2), frac(-1, 4)],
            },
        ];
        for desc in descriptors {
            let t = desc.construct().unwrap();
            let back = classify(&t).unwrap();
            assert_eq!(back, desc, "round trip through classification");
        }
    }

    #[test]
    fn classify_requires_normalized_input() {
        let t = NbgQ {
            d: 2,
            q: q().scalar(2),
        }
        .construct()
        .unwrap();
        let scaled = recognize_lr_triple(&t.a().scale(&q().scalar(5)), t.b(), t.c()).unwrap();
        assert!(!scaled.flags().normalized);
        assert!(matches!(classify(&scaled), Err(FamilyError::NotNormalized)));
        // membership tests carry the same precondition
        assert!(matches!(
            family_memberships(&scaled),
            Err(FamilyError::NotNormalized)
        ));
    }

    #[test]
    fn classify_nbweyl_gf7() {
        let f7 = FieldSpec::gfp(7).unwrap();
        let desc = NbWeylPlus {
            d: 2,
            j: 0,
            q: f7.scalar(3),
        };
        let t = desc.construct().unwrap();
        let back = classify(&t).unwrap();
        assert_eq!(back, desc);
        // membership is exclusive
        assert_eq!(family_memberships(&t).unwrap(), [true, false, false, false]);
    }

    #[test]
    fn nbweyl_rho_closed_forms() {
        // the linear-recurrence families have rho_i = -q^{-2i-2} (j,q
        // forms) or -t^{i+1} (the half-period form)
        let f7 = FieldSpec::gfp(7).unwrap();
        let qv = f7.scalar(3);
        let t = NbWeylPlus { d: 2, j: 0, q: qv.clone() }.construct().unwrap();
        match rho_sequence(&t).unwrap() {
            RhoSequences::Single(rho) => {
                for (i, r) in rho.iter().enumerate() {
                    assert_eq!(*r, -qv.pow(-2 * i as i64 - 2));
                }
            }
            _ => panic!("nonbipartite"),
        }
        let tv = f7.scalar(3);
        let t = NbWeylMinusT { d: 5, t: tv.clone() }.construct().unwrap();
        match rho_sequence(&t).unwrap() {
            RhoSequences::Single(rho) => {
                for (i, r) in rho.iter().enumerate() {
                    assert_eq!(*r, -tv.pow(i as i64 + 1));
                }
            }
            _ => panic!("nonbipartite"),
        }
    }

    #[test]
    fn descriptor_parse_and_display() {
        let cases = [
            ("nbg:d=4,q=2", q()),
            ("nbg1:d=4", q()),
            ("nbng:d=4,t=2", q()),
            ("b:d=4,t=3,rho0=1,rho0p=2", q()),
            ("b:d=2,rho0=1,rho0p=1", q()),
            ("trivial:d=0", q()),
            ("diam1:d=1", q()),
        ];
        for (text, field) in cases {
            let desc = FamilyDescriptor::parse(text, field).unwrap();
            let rendered = desc.to_string();
            let reparsed = FamilyDescriptor::parse(&rendered, field).unwrap();
            assert_eq!(desc, reparsed, "{text}");
            desc.construct().unwrap();
        }
        let f3 = FieldSpec::gfp(3).unwrap();
        let desc = FamilyDescriptor::parse("weyl:d=2", f3).unwrap();
        desc.construct().unwrap();
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn classify_inverts_construct_on_random_geometric(num in 2i64..30, den in 1i64..6, d in 2usize..5) {
            let qv = Scalar::from_fraction(num, den, q());
            let desc = NbgQ { d, q: qv };
            // skip parameter values that violate the side conditions
            if let Ok(t) = desc.construct() {
                let back = classify(&t).unwrap();
                proptest::prop_assert_eq!(back, desc);
            }
        }
    }

    #[test]
    fn suggested_fields() {
        assert_eq!(suggest_field("weyl", 4), FieldSpec::gfp(5).ok());
        assert_eq!(suggest_field("nbwp", 2), FieldSpec::gfp(7).ok());
        assert_eq!(suggest_field("nbwm", 5), FieldSpec::gfp(13).ok());
        assert_eq!(suggest_field("nbwmt", 5), FieldSpec::gfp(7).ok());
        assert_eq!(suggest_field("nbg", 4), Some(q()));
    }
}
