//! Serialization schemas and report envelopes for the CLI.
//!
//! Exact values cross the boundary as digit strings ("p/q"), never floats.
//! Every report embeds a digest of the raw inputs so results are traceable.

use crate::arrangement::{Arrangement, BlockPartition, Line, Wiring, WiringVertical};
use crate::charvar::MembershipReport;
use crate::cyclo::CycloNum;
use crate::laurent::{LaurentPoly, Mono, Param};
use crate::matrix::LaurentMatrix;
use crate::point::ParameterPoint;
use crate::polygon::{IsolationCertificate, LemmaReport, PolygonModel};
use crate::rational::{format_rational, parse_rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::str::FromStr;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CycloDto {
    pub order: u64,
    pub coeffs: Vec<String>,
}

impl CycloDto {
    pub fn from_value(v: &CycloNum) -> Self {
        CycloDto {
            order: v.order(),
            coeffs: v.coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn to_value(&self) -> Result<CycloNum> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        CycloNum::from_coeffs(self.order, coeffs)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaurentTermDto {
    pub coeff: String,
    pub exps: BTreeMap<String, i64>,
}

pub fn laurent_to_dto(p: &LaurentPoly) -> Vec<LaurentTermDto> {
    p.terms()
        .map(|(m, c)| LaurentTermDto {
            coeff: c.to_string(),
            exps: m.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
        })
        .collect()
}

pub fn laurent_from_dto(terms: &[LaurentTermDto]) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for t in terms {
        let c = BigInt::from_str(&t.coeff)
            .map_err(|_| Error::Invalid(format!("bad integer coefficient {}", t.coeff)))?;
        let mut mono = Mono::new();
        for (name, e) in &t.exps {
            let (kind, idx) = name.split_at(1);
            let i: usize = idx
                .parse()
                .map_err(|_| Error::Invalid(format!("bad parameter {name}")))?;
            let p = match kind {
                "s" => Param::S(i),
                "t" => Param::T(i),
                _ => return Err(Error::Invalid(format!("bad parameter {name}"))),
            };
            if *e != 0 {
                mono.insert(p, *e);
            }
        }
        acc = acc.add(&LaurentPoly::monomial(mono, c));
    }
    Ok(acc)
}

/// Matrix dump with the basis convention spelled out.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDto {
    pub basis: String,
    pub ordering: String,
    pub rows: Vec<Vec<Vec<LaurentTermDto>>>,
}

pub fn matrix_to_dto(m: &LaurentMatrix) -> MatrixDto {
    MatrixDto {
        basis: "alpha_{i,i+1}".into(),
        ordering: "x0-fiber".into(),
        rows: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| laurent_to_dto(m.get(i, j))).collect())
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HorizontalDto {
    pub label: String,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerticalLineDto {
    pub label: String,
    pub p: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WiringVerticalDto {
    pub label: String,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WiringDto {
    pub n: usize,
    pub verticals: Vec<WiringVerticalDto>,
}

/// Arrangement input: either exact coordinates or a wiring.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArrangementDto {
    Coords {
        horizontals: Vec<HorizontalDto>,
        verticals: Vec<VerticalLineDto>,
    },
    Wiring {
        wiring: WiringDto,
    },
}

pub fn arrangement_from_dto(dto: &ArrangementDto) -> Result<Arrangement> {
    match dto {
        ArrangementDto::Coords {
            horizontals,
            verticals,
        } => {
            let mut lines = Vec::new();
            for h in horizontals {
                lines.push(Line::Horizontal {
                    label: h.label.clone(),
                    a: parse_rational(&h.a)?,
                    b: parse_rational(&h.b)?,
                });
            }
            for v in verticals {
                lines.push(Line::Vertical {
                    label: v.label.clone(),
                    p: parse_rational(&v.p)?,
                });
            }
            Arrangement::from_coords(lines)
        }
        ArrangementDto::Wiring { wiring } => {
            let verticals = wiring
                .verticals
                .iter()
                .map(|v| {
                    Ok(WiringVertical {
                        label: v.label.clone(),
                        blocks: BlockPartition::from_lists(&v.blocks, wiring.n)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Arrangement::from_wiring(Wiring {
                n: wiring.n,
                verticals,
            })
        }
    }
}

pub fn wiring_to_dto(w: &Wiring) -> WiringDto {
    WiringDto {
        n: w.n,
        verticals: w
            .verticals
            .iter()
            .map(|v| WiringVerticalDto {
                label: v.label.clone(),
                blocks: v
                    .blocks
                    .blocks()
                    .iter()
                    .map(|&(a, b)| (a..=b).collect())
                    .collect(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointDto {
    pub s: Vec<CycloDto>,
    pub t: Vec<CycloDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_inf: Option<CycloDto>,
}

pub fn point_to_dto(p: &ParameterPoint) -> PointDto {
    PointDto {
        s: p.s.iter().map(CycloDto::from_value).collect(),
        t: p.t.iter().map(CycloDto::from_value).collect(),
        t_inf: p.t_inf.as_ref().map(CycloDto::from_value),
    }
}

pub fn point_from_dto(d: &PointDto) -> Result<ParameterPoint> {
    Ok(ParameterPoint::new(
        d.s.iter().map(|c| c.to_value()).collect::<Result<Vec<_>>>()?,
        d.t.iter().map(|c| c.to_value()).collect::<Result<Vec<_>>>()?,
        d.t_inf.as_ref().map(|c| c.to_value()).transpose()?,
    ))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WFactorDto {
    pub vertical: String,
    pub triple: Vec<String>,
    pub value: CycloDto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipDto {
    pub point: PointDto,
    pub rank: usize,
    pub h1: usize,
    pub in_variety: bool,
    pub w_factors: Vec<WFactorDto>,
    pub eigenvector: Option<Vec<Vec<CycloDto>>>,
}

pub fn membership_to_dto(r: &MembershipReport) -> MembershipDto {
    MembershipDto {
        point: point_to_dto(&r.point),
        rank: r.rank,
        h1: r.h1_dim,
        in_variety: r.in_variety,
        w_factors: r
            .w_factors
            .iter()
            .map(|f| WFactorDto {
                vertical: f.vertical.clone(),
                triple: f.triple.clone(),
                value: CycloDto::from_value(&f.value),
            })
            .collect(),
        eigenvector: r.eigenvector.as_ref().map(|basis| {
            basis
                .iter()
                .map(|v| v.iter().map(CycloDto::from_value).collect())
                .collect()
        }),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelingDto {
    pub edges: Vec<String>,
    pub diagonals: Vec<String>,
    pub infinity: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonDto {
    pub n: usize,
    pub wiring: WiringDto,
    pub labeling: LabelingDto,
}

pub fn polygon_to_dto(m: &PolygonModel) -> PolygonDto {
    PolygonDto {
        n: m.n,
        wiring: wiring_to_dto(m.arrangement.wiring()),
        labeling: LabelingDto {
            edges: m.labeling.edges.iter().map(|e| format!("e{e}")).collect(),
            diagonals: m
                .labeling
                .diagonals
                .iter()
                .map(|d| format!("d{d}"))
                .collect(),
            infinity: format!("d{}", m.labeling.infinity),
        },
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateDto {
    pub n: usize,
    pub k: usize,
    pub point: PointDto,
    pub rank_drop_ok: bool,
    pub eigenvector_nonvanishing: bool,
    pub ideal_point_ok: bool,
    pub log_jacobian_rank: usize,
    pub certified: bool,
    /// local certificate only: full-rank log-Jacobian certifies
    /// zero-dimensionality near the point, not globally
    pub note: String,
}

pub fn certificate_to_dto(c: &IsolationCertificate) -> CertificateDto {
    CertificateDto {
        n: c.n,
        k: c.k,
        point: point_to_dto(&c.point),
        rank_drop_ok: c.rank_drop_ok,
        eigenvector_nonvanishing: c.eigenvector_nonvanishing,
        ideal_point_ok: c.ideal_point_ok,
        log_jacobian_rank: c.log_jacobian_rank,
        certified: c.certified,
        note: "log-Jacobian rank certifies local zero-dimensionality only".into(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaDto {
    pub n: usize,
    pub points_total: usize,
    pub points_ok: usize,
    pub jacobian_rank: usize,
    pub jacobian_full: bool,
    pub components_ok: bool,
}

pub fn lemma_to_dto(r: &LemmaReport) -> LemmaDto {
    LemmaDto {
        n: r.n,
        points_total: r.points_total,
        points_ok: r.points_ok,
        jacobian_rank: r.jacobian_rank,
        jacobian_full: r.jacobian_full,
        components_ok: r.components_ok,
    }
}

/// Envelope around every CLI result.
#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub tool_version: &'static str,
    pub input_digest: String,
    pub verb: String,
    pub result: T,
}

pub fn input_digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    format!("{:x}", h.finalize())
}

pub fn report<T: Serialize>(verb: &str, digest_parts: &[&str], result: T) -> Report<T> {
    Report {
        tool_version: TOOL_VERSION,
        input_digest: input_digest(digest_parts),
        verb: verb.to_string(),
        result,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Param;

    #[test]
    fn cyclo_roundtrip() {
        let v = CycloNum::root_of_unity(12, 5).add(&CycloNum::from_int(3));
        let dto = CycloDto::from_value(&v);
        assert_eq!(dto.to_value().unwrap(), v);
    }

    #[test]
    fn laurent_roundtrip() {
        let p = LaurentPoly::param(Param::S(2))
            .mul(&LaurentPoly::param(Param::T(1)))
            .sub(&LaurentPoly::from_int(7));
        let dto = laurent_to_dto(&p);
        assert_eq!(laurent_from_dto(&dto).unwrap(), p);
    }

    #[test]
    fn arrangement_json_both_forms() {
        let coords = r#"{"horizontals":[{"label":"l1","a":"0","b":"0"},{"label":"l2","a":"1","b":"0"}],"verticals":[{"label":"v1","p":"0"}]}"#;
        let dto: ArrangementDto = serde_json::from_str(coords).unwrap();
        let a = arrangement_from_dto(&dto).unwrap();
        assert_eq!(a.n(), 2);

        let wiring = r#"{"wiring":{"n":2,"verticals":[{"label":"v1","blocks":[[1,2]]}]}}"#;
        let dto: ArrangementDto = serde_json::from_str(wiring).unwrap();
        let b = arrangement_from_dto(&dto).unwrap();
        assert_eq!(a.wiring().verticals[0].blocks, b.wiring().verticals[0].blocks);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(input_digest(&["a", "b"]), input_digest(&["a", "b"]));
        assert_ne!(input_digest(&["a", "b"]), input_digest(&["ab"]));
    }
}
