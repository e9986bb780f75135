//! Shared roster of family instances exercised by the acceptance suite:
//! every family at the diameters its parity and size constraints allow,
//! over the rationals where permitted and over deterministically chosen
//! prime fields otherwise.

use lrt_core::families::{suggest_field, FamilyDescriptor};
use lrt_core::{FieldSpec, LRTripleData, Scalar};
use std::sync::OnceLock;

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::from_fraction(n, d, q())
}

/// All family descriptors the acceptance suite constructs, paired with
/// their instances. Constructors self-check recognition and the
/// advertised parameter arrays. Built once per test binary.
pub fn roster() -> &'static [(FamilyDescriptor, LRTripleData)] {
    static ROSTER: OnceLock<Vec<(FamilyDescriptor, LRTripleData)>> = OnceLock::new();
    ROSTER.get_or_init(build_roster)
}

fn build_roster() -> Vec<(FamilyDescriptor, LRTripleData)> {
    use FamilyDescriptor::*;
    let mut out: Vec<FamilyDescriptor> = Vec::new();

    out.push(Trivial { field: q() });
    out.push(Diameter1 { field: q() });

    // geometric family over the rationals, with three q values at d = 2
    for d in 2..=6 {
        out.push(NbgQ {
            d,
            q: q().scalar(2),
        });
    }
    out.push(NbgQ {
        d: 2,
        q: q().scalar(3),
    });
    out.push(NbgQ {
        d: 2,
        q: frac(1, 2),
    });
    // prime-field instance whose parameter is an inverse square (module
    // structure coverage): 10 = (2^2)^{-1} over GF(13)
    let f13 = FieldSpec::gfp(13).unwrap();
    out.push(NbgQ {
        d: 2,
        q: f13.scalar(9),
    });
    out.push(NbgQ {
        d: 3,
        q: f13.scalar(10),
    });
    out.push(NbgQ {
        d: 4,
        q: f13.scalar(10),
    });

    for d in 2..=6 {
        out.push(Nbg1 { d, field: q() });
    }

    for d in [4, 6] {
        out.push(NbngT {
            d,
            t: q().scalar(2),
        });
    }
    out.push(NbngT {
        d: 4,
        t: q().scalar(3),
    });

    // bipartite families: three rho-triples at d = 2, and the
    // two bipartite shapes at d = 4, 6
    for rho in [
        [q().one(), q().one(), q().scalar(-1)],
        [q().scalar(2), q().scalar(3), frac(-1, 6)],
        [frac(1, 2), q().scalar(-1), q().scalar(2)],
    ] {
        out.push(B2 { rho });
    }
    for d in [4usize, 6] {
        let tpar = q().scalar(2);
        let prod = -tpar.pow(1 - d as i64 / 2);
        let rho0 = q().one();
        let rho0p = q().scalar(2);
        let rho0pp = &prod / &(&rho0 * &rho0p);
        out.push(BT {
            d,
            t: tpar,
            rho: [rho0, rho0p, rho0pp],
        });
        out.push(B1 {
            d,
            rho: [q().one(), q().scalar(2), frac(-1, 2)],
        });
    }
    // prime-field bipartite instance with t an inverse square
    out.push(BT {
        d: 4,
        t: f13.scalar(9),
        rho: [f13.one(), f13.scalar(2), f13.scalar(5)],
    });
    // characteristic-2 instance of the d = 2 bipartite family
    let f2 = FieldSpec::gfp(2).unwrap();
    out.push(B2 {
        rho: [f2.one(), f2.one(), f2.one()],
    });

    // linear-recurrence families over the automatically selected fields
    let nbwp_field = |d: usize| match suggest_field("nbwp", d).unwrap() {
        FieldSpec::PrimeField(p) => FieldSpec::gfp(p).unwrap(),
        other => other,
    };
    {
        let f = nbwp_field(2);
        assert_eq!(f, FieldSpec::gfp(7).unwrap());
        let qv = f.find_root_of_unity(6).unwrap();
        out.push(NbWeylPlus { d: 2, j: 0, q: qv });
    }
    {
        let f = nbwp_field(4);
        assert_eq!(f, FieldSpec::gfp(11).unwrap());
        let qv = f.find_root_of_unity(10).unwrap();
        for j in 0..2 {
            out.push(NbWeylPlus {
                d: 4,
                j,
                q: qv.clone(),
            });
        }
    }
    {
        let f = nbwp_field(6);
        assert_eq!(f, FieldSpec::gfp(29).unwrap());
        let qv = f.find_root_of_unity(14).unwrap();
        for j in 0..3 {
            out.push(NbWeylPlus {
                d: 6,
                j,
                q: qv.clone(),
            });
        }
    }
    {
        let f = suggest_field("nbwm", 3).unwrap();
        assert_eq!(f, FieldSpec::gfp(17).unwrap());
        let qv = f.find_root_of_unity(8).unwrap();
        out.push(NbWeylMinusJq { d: 3, j: 0, q: qv });
    }
    {
        let f = suggest_field("nbwm", 5).unwrap();
        assert_eq!(f, FieldSpec::gfp(13).unwrap());
        let qv = f.find_root_of_unity(12).unwrap();
        out.push(NbWeylMinusJq { d: 5, j: 0, q: qv });
    }
    {
        let f = suggest_field("nbwmt", 5).unwrap();
        assert_eq!(f, FieldSpec::gfp(7).unwrap());
        let tv = f.find_root_of_unity(6).unwrap();
        out.push(NbWeylMinusT { d: 5, t: tv });
    }

    // fixed-characteristic map families
    for d in [2usize, 4, 6] {
        let f = FieldSpec::gfp(d as u64 + 1).unwrap();
        out.push(Weyl { d, field: f });
    }

    // q-Weyl instances: the vanishing index over GF(7) and both indices
    // over a field containing sqrt(q)
    let f7 = FieldSpec::gfp(7).unwrap();
    out.push(QWeyl {
        d: 2,
        j: 1,
        q: f7.scalar(3),
    });
    let f17 = FieldSpec::gfp(17).unwrap();
    for j in 0..=1 {
        out.push(QWeyl {
            d: 1,
            j,
            q: f17.scalar(4),
        });
    }

    out.into_iter()
        .map(|desc| {
            let t = desc
                .construct()
                .unwrap_or_else(|e| panic!("construct {desc}: {e}"));
            (desc, t)
        })
        .collect()
}

/// The normalized classification families in the roster (classification
/// round trips apply to these).
pub fn is_normalized_family(desc: &FamilyDescriptor) -> bool {
    !matches!(
        desc,
        FamilyDescriptor::Weyl { .. } | FamilyDescriptor::QWeyl { .. }
    )
}
