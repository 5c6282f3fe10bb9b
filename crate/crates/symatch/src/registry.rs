//! Built-in code registry and config-file loading.
//!
//! Hard-codes the benchmark code table (name, polynomials, torus, expected
//! parameters) as the single source of truth for the harness. The toric and
//! toric-color families take a linear size `l`, selected as `tc:6`; the other
//! entries are fixed instances.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::code::{BBCode, CodeError};
use crate::poly::{LatticePoly, PolyError, TorusShape};

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("unknown code {0:?}; see `codes list`")]
    UnknownCode(String),
    #[error("bad size parameter for {name}: {reason}")]
    BadParam { name: String, reason: String },
    #[error("built code disagrees with registry: {0}")]
    TableMismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("cannot read code file: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse code file: {0}")]
    Toml(#[from] toml::de::Error),
}

#[derive(Clone, Copy, Debug)]
pub enum Params {
    Fixed {
        m: usize,
        n: usize,
        alpha: usize,
        qubits: usize,
        k: usize,
        d: usize,
        d_caveat: bool,
    },
    /// Square-torus family parameterized by the linear size `l`.
    Family { kind: FamilyKind, default_l: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Toric,
    ToricColor,
}

#[derive(Clone, Copy, Debug)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub category: &'static str,
    pub a: &'static str,
    pub b: &'static str,
    pub params: Params,
}

pub const ENTRIES: &[RegistryEntry] = &[
    RegistryEntry {
        name: "tc",
        aliases: &["toric"],
        category: "Topological",
        a: "1+x",
        b: "1+y",
        params: Params::Family {
            kind: FamilyKind::Toric,
            default_l: 4,
        },
    },
    RegistryEntry {
        name: "cc",
        aliases: &["toric-color"],
        category: "Topological",
        a: "1+x+y",
        b: "1+y+x^-1*y",
        params: Params::Family {
            kind: FamilyKind::ToricColor,
            default_l: 6,
        },
    },
    RegistryEntry {
        name: "gross",
        aliases: &["bb144"],
        category: "Gross family",
        a: "1+x+x^-1*y^3",
        b: "1+y+y^-1*x^3",
        params: Params::Fixed {
            m: 12,
            n: 6,
            alpha: 0,
            qubits: 144,
            k: 12,
            d: 12,
            d_caveat: false,
        },
    },
    RegistryEntry {
        name: "two-gross",
        aliases: &["bb288"],
        category: "Gross family",
        a: "1+x+x^-1*y^-3",
        b: "1+y+y^-1*x^3",
        params: Params::Fixed {
            m: 12,
            n: 12,
            alpha: 0,
            qubits: 288,
            k: 12,
            d: 18,
            d_caveat: false,
        },
    },
    RegistryEntry {
        name: "gt98",
        aliases: &[],
        category: "Generalized toric",
        a: "1+x+x^-1*y^-2",
        b: "1+y+y^-1*x^2",
        params: Params::Fixed {
            m: 7,
            n: 7,
            alpha: 0,
            qubits: 98,
            k: 6,
            d: 12,
            d_caveat: false,
        },
    },
    RegistryEntry {
        name: "gt240",
        aliases: &[],
        category: "Generalized toric",
        a: "1+x+x^2*y",
        b: "1+y+y^-2*x",
        params: Params::Fixed {
            m: 10,
            n: 12,
            alpha: 3,
            qubits: 240,
            // The published table prints k = 12, inconsistently with its own
            // kd^2/n column (10.8 = 8·18²/240); the rank computation confirms
            // k = 8 under the stated boundary relations.
            k: 8,
            d: 18,
            d_caveat: false,
        },
    },
    RegistryEntry {
        name: "d36",
        aliases: &[],
        category: "Directional",
        a: "1+x^3*y^-1",
        b: "1+x+x^2",
        params: Params::Fixed {
            m: 9,
            n: 2,
            alpha: 0,
            qubits: 36,
            k: 4,
            d: 4,
            d_caveat: false,
        },
    },
    RegistryEntry {
        name: "d180",
        aliases: &[],
        category: "Directional",
        a: "x^-1+x^2*y^-1",
        b: "1+x+x^2",
        params: Params::Fixed {
            // The published row prints "15,9,6", but a (15,9) torus carries
            // 270 qubits; n = 180 forces (M,N) = (15,6), twist alpha = 9.
            m: 15,
            n: 6,
            alpha: 9,
            qubits: 180,
            k: 4,
            // Reported with reservations in the source material (<= 10
            // elsewhere); kept at 8 with the caveat flag raised.
            d: 8,
            d_caveat: true,
        },
    },
    RegistryEntry {
        name: "lc162",
        aliases: &["la-cross"],
        category: "Cyclic HGP",
        a: "1+x+x^2",
        b: "1+y+y^2",
        params: Params::Fixed {
            m: 9,
            n: 9,
            alpha: 0,
            qubits: 162,
            k: 8,
            d: 6,
            d_caveat: false,
        },
    },
    RegistryEntry {
        name: "lc224",
        aliases: &[],
        category: "Cyclic HGP",
        a: "1+x+x^3",
        b: "1+y",
        params: Params::Fixed {
            m: 14,
            n: 8,
            alpha: 0,
            qubits: 224,
            k: 6,
            d: 8,
            d_caveat: false,
        },
    },
];

impl RegistryEntry {
    /// Expected `(n, k, d)` for the instance, resolving family formulas.
    pub fn expected_nkd(&self, l: Option<usize>) -> Result<(usize, usize, usize), RegistryError> {
        match self.params {
            Params::Fixed { qubits, k, d, .. } => Ok((qubits, k, d)),
            Params::Family { kind, default_l } => {
                let l = l.unwrap_or(default_l);
                match kind {
                    FamilyKind::Toric => Ok((2 * l * l, 2, l)),
                    FamilyKind::ToricColor => {
                        if l % 3 != 0 {
                            return Err(RegistryError::BadParam {
                                name: self.name.to_string(),
                                reason: format!("l = {l} must be divisible by 3"),
                            });
                        }
                        Ok((2 * l * l, 4, 4 * l / 3))
                    }
                }
            }
        }
    }

    pub fn shape(&self, l: Option<usize>) -> Result<TorusShape, RegistryError> {
        let (m, n, alpha) = match self.params {
            Params::Fixed { m, n, alpha, .. } => (m, n, alpha),
            Params::Family { default_l, .. } => {
                let l = l.unwrap_or(default_l);
                (l, l, 0)
            }
        };
        Ok(TorusShape::new(m, n, alpha)?)
    }

    pub fn d_caveat(&self) -> bool {
        matches!(self.params, Params::Fixed { d_caveat: true, .. })
    }

    /// The `[[n,k,d]]` column, symbolic for families.
    pub fn nkd_label(&self) -> String {
        match self.params {
            Params::Fixed {
                qubits, k, d, d_caveat, ..
            } => format!("[[{qubits},{k},{d}{}]]", if d_caveat { "*" } else { "" }),
            Params::Family { kind, .. } => match kind {
                FamilyKind::Toric => "[[2l^2,2,l]]".to_string(),
                FamilyKind::ToricColor => "[[2l^2,4,4l/3]]".to_string(),
            },
        }
    }

    pub fn shape_label(&self) -> String {
        match self.params {
            Params::Fixed { m, n, alpha, .. } => format!("{m},{n},{alpha}"),
            Params::Family { .. } => "l,l,0".to_string(),
        }
    }
}

pub fn find(name: &str) -> Option<&'static RegistryEntry> {
    let lower = name.to_ascii_lowercase();
    ENTRIES
        .iter()
        .find(|e| e.name == lower || e.aliases.contains(&lower.as_str()))
}

/// Builds a registry code. Family entries accept a size suffix, e.g. `tc:6`.
pub fn build_named(spec: &str) -> Result<BBCode, RegistryError> {
    let (name, l) = match spec.split_once(':') {
        Some((name, l)) => {
            let l: usize = l.parse().map_err(|_| RegistryError::BadParam {
                name: name.to_string(),
                reason: format!("size suffix {l:?} is not an integer"),
            })?;
            (name, Some(l))
        }
        None => (spec, None),
    };
    let entry = find(name).ok_or_else(|| RegistryError::UnknownCode(spec.to_string()))?;
    if l.is_some() && matches!(entry.params, Params::Fixed { .. }) {
        return Err(RegistryError::BadParam {
            name: entry.name.to_string(),
            reason: "size suffix only applies to the tc/cc families".to_string(),
        });
    }
    if let Some(l) = l {
        if l < 2 {
            return Err(RegistryError::BadParam {
                name: entry.name.to_string(),
                reason: "l must be at least 2".to_string(),
            });
        }
    }
    let shape = entry.shape(l)?;
    let a = LatticePoly::parse(shape, entry.a)?;
    let b = LatticePoly::parse(shape, entry.b)?;
    let display_name = match (entry.params, l) {
        (Params::Family { .. }, Some(l)) => format!("{}:{}", entry.name, l),
        _ => entry.name.to_string(),
    };
    let mut code = BBCode::build(display_name, a, b)?;
    let (n, k, d) = entry.expected_nkd(l)?;
    if code.num_qubits() != n || code.num_logicals() != k {
        return Err(RegistryError::TableMismatch(format!(
            "{spec}: built [[{},{}]] but registry lists [[{n},{k}]]",
            code.num_qubits(),
            code.num_logicals(),
        )));
    }
    code.distance = Some(d);
    code.distance_caveat = entry.d_caveat();
    Ok(code)
}

#[derive(Deserialize)]
struct CodeFile {
    name: Option<String>,
    m: usize,
    n: usize,
    #[serde(default)]
    alpha: usize,
    a: String,
    b: String,
    d: Option<usize>,
}

/// Loads a code from a TOML file using the polynomial text syntax.
pub fn load_code_file(path: &Path) -> Result<BBCode, RegistryError> {
    let text = std::fs::read_to_string(path)?;
    let spec: CodeFile = toml::from_str(&text)?;
    let shape = TorusShape::new(spec.m, spec.n, spec.alpha)?;
    let a = LatticePoly::parse(shape, &spec.a)?;
    let b = LatticePoly::parse(shape, &spec.b)?;
    let name = spec
        .name
        .unwrap_or_else(|| path.file_stem().map_or("custom".into(), |s| s.to_string_lossy().into_owned()));
    let mut code = BBCode::build(name, a, b)?;
    code.distance = spec.d;
    Ok(code)
}
