//! Tagged JSON certificates and their verification against a host graph.

use serde::{Deserialize, Serialize};

use crate::error::{require, Result, Verdict, Violation};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::invariants::chi_of;
use crate::io::{graph_hash, parse_graph6, write_graph6};
use crate::iso::{validate_starry, StarryCertificate};
use crate::machinery::{
    validate_band, validate_cathedral, validate_equipment, validate_gyarfas, validate_proper_equipment, validate_spire,
    validate_x_split, Band, Cathedral, Equipment, GyarfasResult, Spire, XSplit,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    XSplit {
        x_ground: VertexSet,
        min_chi: usize,
        split: XSplit,
    },
    Equipment {
        y_ground: VertexSet,
        d: usize,
        proper: bool,
        equipment: Equipment,
    },
    Gyarfas {
        c_set: VertexSet,
        x0: Vertex,
        k: usize,
        result: GyarfasResult,
    },
    Spire {
        spire: Spire,
        dominated: Option<VertexSet>,
        min_chi: Option<usize>,
    },
    Cathedral {
        cathedral: Cathedral,
        free: bool,
        dominated: VertexSet,
    },
    Band {
        band: Band,
        dominated: Option<VertexSet>,
    },
    Starry {
        k: usize,
        d: usize,
        certificate: StarryCertificate,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::XSplit { .. } => "x_split",
            Certificate::Equipment { .. } => "equipment",
            Certificate::Gyarfas { .. } => "gyarfas",
            Certificate::Spire { .. } => "spire",
            Certificate::Cathedral { .. } => "cathedral",
            Certificate::Band { .. } => "band",
            Certificate::Starry { .. } => "starry",
        }
    }
}

/// Re-checks a certificate clause by clause, including any stated χ lower bound.
pub fn verify(g: &Graph, cert: &Certificate) -> Verdict {
    match cert {
        Certificate::XSplit {
            x_ground,
            min_chi,
            split,
        } => {
            validate_x_split(g, x_ground, split)?;
            let c = chi_of(g, &split.z_set);
            require(c > *min_chi, "χ(Z) exceeds min_chi", || {
                format!("χ(Z) = {c}, min_chi = {min_chi}")
            })
        }
        Certificate::Equipment {
            y_ground,
            d,
            proper,
            equipment,
        } => {
            if *proper {
                validate_proper_equipment(g, y_ground, *d, equipment)
            } else {
                validate_equipment(g, y_ground, *d, equipment)
            }
        }
        Certificate::Gyarfas { c_set, x0, k, result } => validate_gyarfas(g, c_set, *x0, *k, result),
        Certificate::Spire {
            spire,
            dominated,
            min_chi,
        } => {
            validate_spire(g, spire, dominated.as_ref())?;
            match (min_chi, dominated) {
                (None, _) => Ok(()),
                (Some(_), None) => Err(Violation::new("min_chi needs a dominated set", "")),
                (Some(t), Some(c)) => {
                    let chi = chi_of(g, c);
                    require(chi > *t, "χ(C) exceeds min_chi", || {
                        format!("χ(C) = {chi}, min_chi = {t}")
                    })
                }
            }
        }
        Certificate::Cathedral {
            cathedral,
            free,
            dominated,
        } => validate_cathedral(g, cathedral, *free, dominated),
        Certificate::Band { band, dominated } => validate_band(g, band, dominated.as_ref()),
        Certificate::Starry { k, d, certificate } => validate_starry(g, *k, *d, certificate),
    }
}

/// A certificate bundled with its host, as written to the certificate store.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoredCertificate {
    pub graph_hash: String,
    /// graph6 encoding of the host.
    pub graph: String,
    #[serde(flatten)]
    pub certificate: Certificate,
}

impl StoredCertificate {
    pub fn new(g: &Graph, certificate: Certificate) -> Self {
        StoredCertificate {
            graph_hash: graph_hash(g),
            graph: write_graph6(g),
            certificate,
        }
    }

    /// Decodes the host, checks its hash, then verifies the certificate against it.
    pub fn verify(&self) -> Result<Verdict> {
        let g = parse_graph6(&self.graph)?;
        let hash = graph_hash(&g);
        if hash != self.graph_hash {
            return Ok(Err(Violation::new(
                "graph hash matches",
                format!("stored {}, computed {hash}", self.graph_hash),
            )));
        }
        Ok(verify(&g, &self.certificate))
    }
}
