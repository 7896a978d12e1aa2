//! The versioned JSON instance document and its resolution into checked
//! objects.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use threefold::cvna::{fibre_product, Algebra, CondExp, FibreSquare, Hom, State};
use threefold::groupoid::{corpus, FiniteGroupoid, GRepresentation};
use threefold::hmod::{Module, ModuleMap};
use threefold::Matrix;

pub const FORMAT_VERSION: &str = "1";

/// A complex number as `[re, im]`.
pub type ComplexDef = [f64; 2];
/// A matrix as a list of rows.
pub type MatrixDef = Vec<Vec<ComplexDef>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub version: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homs: BTreeMap<String, HomDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub states: BTreeMap<String, StateDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cond_exps: BTreeMap<String, CondExpDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub module_maps: BTreeMap<String, ModuleMapDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub squares: BTreeMap<String, SquareDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groupoids: BTreeMap<String, GroupoidDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RepresentationDef>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub atoms: Vec<String>,
}

/// A homomorphism `source -> target`; `spec[k]` is the source atom that
/// target atom `k` lies over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDef {
    pub source: String,
    pub target: String,
    pub spec: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDef {
    pub algebra: String,
    pub weights: Vec<f64>,
}

/// A conditional expectation onto the source of `hom`, one weight per atom of
/// its target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CondExpDef {
    pub hom: String,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDef {
    pub algebra: String,
    pub dims: Vec<usize>,
}

/// One block per atom, each `target dim × source dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleMapDef {
    pub source: String,
    pub target: String,
    pub blocks: Vec<MatrixDef>,
}

/// The fibre product of `f` and `g`, which must share their source. `pairs`
/// fixes the order of the product atoms; lexicographic when omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDef {
    pub f: String,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[String; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDef {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupoidDef {
    /// Products are listed as `[a, b, a∘b]` for every pair with
    /// `source(a) == target(b)`.
    Explicit {
        objects: Vec<String>,
        arrows: Vec<ArrowDef>,
        products: Vec<[String; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        object_weights: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arrow_weights: Option<Vec<f64>>,
    },
    Cyclic {
        order: usize,
    },
    Symmetric {
        letters: usize,
    },
    Klein,
    Pair {
        points: usize,
    },
    Trivial {
        objects: usize,
    },
}

/// A representation with fiber dimension `rank` everywhere or `dims` per
/// object, and `alpha` per arrow name. Arrows left out act by the identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDef {
    pub groupoid: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub alpha: BTreeMap<String, MatrixDef>,
}

/// Why a document could not be used.
#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported document version {0:?}, expected {FORMAT_VERSION:?}")]
    Version(String),
    #[error("{kind} {name:?}: {message}")]
    Invalid {
        kind: &'static str,
        name: String,
        message: String,
    },
}

impl DocumentError {
    fn invalid(kind: &'static str, name: &str, message: impl ToString) -> Self {
        DocumentError::Invalid {
            kind,
            name: name.to_string(),
            message: message.to_string(),
        }
    }
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: InstanceDocument = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.version != FORMAT_VERSION {
            return Err(DocumentError::Version(doc.version));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Every object of a document, validated.
#[derive(Debug, Clone, Default)]
pub struct Instances {
    pub algebras: BTreeMap<String, Algebra>,
    pub homs: BTreeMap<String, Hom>,
    pub states: BTreeMap<String, State<f64>>,
    pub cond_exps: BTreeMap<String, CondExp<f64>>,
    pub modules: BTreeMap<String, Module>,
    pub module_maps: BTreeMap<String, ModuleMap<f64>>,
    pub squares: BTreeMap<String, FibreSquare>,
    pub groupoids: BTreeMap<String, FiniteGroupoid>,
    pub representations: BTreeMap<String, GRepresentation<f64>>,
}

fn lookup<'a, V>(
    map: &'a BTreeMap<String, V>,
    key: &str,
    kind: &'static str,
    name: &str,
) -> Result<&'a V, DocumentError> {
    map.get(key)
        .ok_or_else(|| DocumentError::invalid(kind, name, format!("refers to an unknown object {key:?}")))
}

fn atom(a: &Algebra, label: &str, kind: &'static str, name: &str) -> Result<usize, DocumentError> {
    a.index_of(label)
        .ok_or_else(|| DocumentError::invalid(kind, name, format!("no atom {label:?}")))
}

fn matrix(def: &MatrixDef, kind: &'static str, name: &str) -> Result<Matrix, DocumentError> {
    let rows = def.len();
    let cols = def.first().map_or(0, Vec::len);
    if def.iter().any(|r| r.len() != cols) {
        return Err(DocumentError::invalid(kind, name, "matrix rows have different lengths"));
    }
    let data = def.iter().flatten().map(|&[re, im]| Complex::new(re, im)).collect();
    Matrix::new(rows, cols, data).map_err(|e| DocumentError::invalid(kind, name, e))
}

pub fn matrix_def(m: &Matrix) -> MatrixDef {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

/// Resolves references and re-validates every object. `tol` bounds the
/// unitarity and cocycle residuals of representations.
pub fn resolve(doc: &InstanceDocument, tol: f64) -> Result<Instances, DocumentError> {
    let mut out = Instances::default();
    for (name, def) in &doc.algebras {
        let a = Algebra::new(def.atoms.iter().cloned()).map_err(|e| DocumentError::invalid("algebra", name, e))?;
        out.algebras.insert(name.clone(), a);
    }
    for (name, def) in &doc.homs {
        const K: &str = "hom";
        let source = lookup(&out.algebras, &def.source, K, name)?;
        let target = lookup(&out.algebras, &def.target, K, name)?;
        let spec = def
            .spec
            .iter()
            .map(|l| atom(source, l, K, name))
            .collect::<Result<_, _>>()?;
        let h = Hom::new(source, target, spec).map_err(|e| DocumentError::invalid(K, name, e))?;
        out.homs.insert(name.clone(), h);
    }
    for (name, def) in &doc.states {
        let a = lookup(&out.algebras, &def.algebra, "state", name)?;
        let s = State::new(a, def.weights.clone()).map_err(|e| DocumentError::invalid("state", name, e))?;
        out.states.insert(name.clone(), s);
    }
    for (name, def) in &doc.cond_exps {
        const K: &str = "conditional expectation";
        let h = lookup(&out.homs, &def.hom, K, name)?;
        let phi = CondExp::new(h, def.weights.clone()).map_err(|e| DocumentError::invalid(K, name, e))?;
        out.cond_exps.insert(name.clone(), phi);
    }
    for (name, def) in &doc.modules {
        let a = lookup(&out.algebras, &def.algebra, "module", name)?;
        let m = Module::new(a, def.dims.clone()).map_err(|e| DocumentError::invalid("module", name, e))?;
        out.modules.insert(name.clone(), m);
    }
    for (name, def) in &doc.module_maps {
        const K: &str = "module map";
        let source = lookup(&out.modules, &def.source, K, name)?;
        let target = lookup(&out.modules, &def.target, K, name)?;
        let blocks = def
            .blocks
            .iter()
            .map(|b| matrix(b, K, name))
            .collect::<Result<_, _>>()?;
        let h = ModuleMap::new(source, target, blocks).map_err(|e| DocumentError::invalid(K, name, e))?;
        out.module_maps.insert(name.clone(), h);
    }
    for (name, def) in &doc.squares {
        const K: &str = "square";
        let f = lookup(&out.homs, &def.f, K, name)?;
        let g = lookup(&out.homs, &def.g, K, name)?;
        let sq = match &def.pairs {
            None => fibre_product(f, g),
            Some(pairs) => {
                let idx = pairs
                    .iter()
                    .map(|[i, j]| Ok((atom(f.target(), i, K, name)?, atom(g.target(), j, K, name)?)))
                    .collect::<Result<Vec<_>, DocumentError>>()?;
                let product = Algebra::new(pairs.iter().map(|[i, j]| format!("({i},{j})")))
                    .map_err(|e| DocumentError::invalid(K, name, e))?;
                FibreSquare::with_pairs(f, g, &product, idx)
            }
        }
        .map_err(|e| DocumentError::invalid(K, name, e))?;
        out.squares.insert(name.clone(), sq);
    }
    for (name, def) in &doc.groupoids {
        let g = groupoid(def).map_err(|e| DocumentError::invalid("groupoid", name, e))?;
        out.groupoids.insert(name.clone(), g);
    }
    for (name, def) in &doc.representations {
        const K: &str = "representation";
        let g = lookup(&out.groupoids, &def.groupoid, K, name)?;
        let dims = match (&def.rank, &def.dims) {
            (Some(r), None) => vec![*r; g.objects().len()],
            (None, Some(d)) => d.clone(),
            _ => return Err(DocumentError::invalid(K, name, "give exactly one of rank and dims")),
        };
        if dims.len() != g.objects().len() {
            return Err(DocumentError::invalid(
                K,
                name,
                format!("{} dims for {} objects", dims.len(), g.objects().len()),
            ));
        }
        let mut blocks: Vec<Matrix> = (0..g.arrows().len())
            .map(|a| {
                let (s, t) = (dims[g.source(a)], dims[g.target(a)]);
                if s == t {
                    Matrix::identity(s)
                } else {
                    Matrix::zeros(t, s)
                }
            })
            .collect();
        for (arrow, m) in &def.alpha {
            let a = atom(g.arrows(), arrow, K, name)?;
            blocks[a] = matrix(m, K, name)?;
        }
        let rep = GRepresentation::from_blocks(g, dims, blocks, tol).map_err(|e| DocumentError::invalid(K, name, e))?;
        out.representations.insert(name.clone(), rep);
    }
    Ok(out)
}

fn groupoid(def: &GroupoidDef) -> threefold::Result<FiniteGroupoid> {
    match def {
        GroupoidDef::Cyclic { order } => corpus::cyclic(*order),
        GroupoidDef::Symmetric { letters } => corpus::symmetric(*letters),
        GroupoidDef::Klein => corpus::klein(),
        GroupoidDef::Pair { points } => corpus::pair(*points),
        GroupoidDef::Trivial { objects } => corpus::trivial(*objects),
        GroupoidDef::Explicit {
            objects,
            arrows,
            products,
            object_weights,
            arrow_weights,
        } => {
            let objs = Algebra::new(objects.iter().cloned())?;
            let arrs = Algebra::new(arrows.iter().map(|a| a.name.clone()))?;
            let obj = |l: &str| {
                objs.index_of(l)
                    .ok_or_else(|| threefold::Error::InvalidGroupoid(format!("no object {l:?}")))
            };
            let arr = |l: &str| {
                arrs.index_of(l)
                    .ok_or_else(|| threefold::Error::InvalidGroupoid(format!("no arrow {l:?}")))
            };
            let source = arrows
                .iter()
                .map(|a| obj(&a.source))
                .collect::<threefold::Result<_>>()?;
            let target = arrows
                .iter()
                .map(|a| obj(&a.target))
                .collect::<threefold::Result<_>>()?;
            let table = products
                .iter()
                .map(|[a, b, c]| Ok((arr(a)?, arr(b)?, arr(c)?)))
                .collect::<threefold::Result<Vec<_>>>()?;
            let g = FiniteGroupoid::from_table(objs.clone(), arrs.clone(), source, target, &table)?;
            match (object_weights, arrow_weights) {
                (None, None) => Ok(g),
                (ow, aw) => g.with_weights(
                    ow.clone().unwrap_or_else(|| vec![1.0; objs.len()]),
                    aw.clone().unwrap_or_else(|| vec![1.0; arrs.len()]),
                ),
            }
        }
    }
}
