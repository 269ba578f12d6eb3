//! File formats: TOML algebra presentations and module files.
//!
//! An algebra file names the field, the quiver, and the relations as
//! strings; a module file carries dimension vectors and exact-entry arrow
//! matrices, either as a single module or as a list of `[[summand]]`
//! blocks (which is also the catalog format written by `indecs`). No
//! floats anywhere: every scalar is an integer or a fraction string.

use crate::algebra::{Algebra, Arrow, Quiver, Relation, DEFAULT_MAX_PATH_LENGTH};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::scalar::{FieldSpec, Scalar};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

#[derive(Deserialize)]
struct AlgebraFile {
    field: String,
    #[serde(default)]
    relations: Vec<String>,
    quiver: QuiverFile,
    #[serde(default)]
    options: Option<OptionsFile>,
}

#[derive(Deserialize)]
struct QuiverFile {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowFile>,
}

#[derive(Deserialize)]
struct ArrowFile {
    name: String,
    from: String,
    to: String,
}

#[derive(Deserialize, Default, Clone, Copy)]
pub struct OptionsFile {
    pub max_path_length: Option<usize>,
    pub cutoff: Option<usize>,
    pub seed: Option<u64>,
}

/// The algebra plus whatever `[options]` the file carried (the command line
/// may override them).
pub struct LoadedAlgebra {
    pub algebra: Arc<Algebra>,
    pub options: OptionsFile,
}

pub fn parse_algebra_file(path: &Path) -> Result<LoadedAlgebra> {
    let text = std::fs::read_to_string(path)?;
    parse_algebra_str(&text)
}

pub fn parse_algebra_str(text: &str) -> Result<LoadedAlgebra> {
    let file: AlgebraFile =
        toml::from_str(text).map_err(|e| Error::Parse(format!("algebra file: {e}")))?;
    let field = FieldSpec::parse(&file.field)?;

    let vertices = file.quiver.vertices;
    for (i, v) in vertices.iter().enumerate() {
        if vertices[..i].contains(v) {
            return Err(Error::Parse(format!("duplicate vertex name \"{v}\"")));
        }
    }
    let vertex_index = |name: &str| -> Result<usize> {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown vertex \"{name}\"")))
    };

    // fixed arrow order (by name) keeps the path basis identical across
    // platforms and file layouts
    let mut arrow_files = file.quiver.arrows;
    arrow_files.sort_by(|a, b| a.name.cmp(&b.name));
    let mut arrows = Vec::new();
    for a in &arrow_files {
        if arrows.iter().any(|b: &Arrow| b.name == a.name) {
            return Err(Error::Parse(format!("duplicate arrow name \"{}\"", a.name)));
        }
        arrows.push(Arrow {
            name: a.name.clone(),
            src: vertex_index(&a.from)?,
            tgt: vertex_index(&a.to)?,
        });
    }
    let quiver = Quiver { vertices, arrows };

    let relations = file
        .relations
        .iter()
        .map(|s| parse_relation(&quiver, s))
        .collect::<Result<Vec<_>>>()?;

    let options = file.options.unwrap_or_default();
    let max_len = options.max_path_length.unwrap_or(DEFAULT_MAX_PATH_LENGTH);
    let algebra = Algebra::new(field, quiver, relations, max_len)?;
    Ok(LoadedAlgebra { algebra, options })
}

/// A relation string is a signed integer combination of '*'-joined arrow
/// names: `"a1*a2"`, `"x*x - 2*y*y"`. A term may start with an integer
/// coefficient; everything else must name an arrow.
fn parse_relation(quiver: &Quiver, s: &str) -> Result<Relation> {
    let oops = |msg: String| Error::Parse(format!("relation \"{s}\": {msg}"));
    let mut terms = Vec::new();
    for (sign, term) in signed_chunks(s) {
        let factors: Vec<&str> = term.split('*').map(str::trim).collect();
        if factors.iter().any(|f| f.is_empty()) {
            return Err(oops("empty factor".into()));
        }
        let (coeff, names) = match factors[0].parse::<i64>() {
            Ok(c) => (c, &factors[1..]),
            Err(_) => (1, &factors[..]),
        };
        if names.is_empty() {
            return Err(oops("term has no arrows".into()));
        }
        let mut path = Vec::new();
        for name in names {
            let a = quiver
                .arrows
                .iter()
                .position(|arr| arr.name == *name)
                .ok_or_else(|| oops(format!("unknown arrow \"{name}\"")))?;
            path.push(a);
        }
        for w in path.windows(2) {
            if quiver.arrows[w[0]].tgt != quiver.arrows[w[1]].src {
                return Err(oops(format!(
                    "arrows \"{}\" and \"{}\" do not compose",
                    quiver.arrows[w[0]].name, quiver.arrows[w[1]].name
                )));
            }
        }
        terms.push((sign * coeff, path));
    }
    if terms.is_empty() {
        return Err(oops("no terms".into()));
    }
    // homogeneity and admissibility, reported against the source text
    let len = terms[0].1.len();
    if terms.iter().any(|(_, p)| p.len() != len) {
        return Err(Error::NotHomogeneous(format!(
            "relation \"{s}\" mixes path lengths"
        )));
    }
    if len < 2 {
        return Err(Error::NotAdmissible(format!(
            "relation \"{s}\" involves a path of length {len}; relations must sit in the square \
             of the arrow ideal"
        )));
    }
    let ends = |p: &[usize]| (quiver.arrows[p[0]].src, quiver.arrows[p[p.len() - 1]].tgt);
    let e0 = ends(&terms[0].1);
    if terms.iter().any(|(_, p)| ends(p) != e0) {
        return Err(Error::NotAdmissible(format!(
            "relation \"{s}\" combines non-parallel paths"
        )));
    }
    Ok(Relation { terms })
}

/// Splits `"a - b + 2*c"` into signed chunks `(+1, "a"), (-1, "b"), (+1, "2*c")`.
fn signed_chunks(s: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                }
                cur = String::new();
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    out
}

#[derive(Deserialize)]
struct ModuleFile {
    #[serde(default)]
    complete: Option<bool>,
    #[serde(default)]
    dims: Option<Vec<usize>>,
    #[serde(default)]
    matrices: Option<BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default)]
    summand: Vec<SummandBlock>,
}

#[derive(Deserialize)]
struct SummandBlock {
    #[serde(default)]
    label: Option<String>,
    dims: Vec<usize>,
    #[serde(default)]
    matrices: BTreeMap<String, Vec<Vec<String>>>,
}

/// Parsed module file: one or more summands, with labels where the file
/// provided them.
pub struct LoadedModules {
    pub labels: Vec<String>,
    pub summands: Vec<Rep>,
    pub complete: bool,
}

impl LoadedModules {
    pub fn direct_sum(&self, alg: &Arc<Algebra>) -> Rep {
        let parts: Vec<&Rep> = self.summands.iter().collect();
        Rep::direct_sum(alg, &parts)
    }
}

pub fn parse_module_file(alg: &Arc<Algebra>, path: &Path) -> Result<LoadedModules> {
    let text = std::fs::read_to_string(path)?;
    parse_module_str(alg, &text)
}

pub fn parse_module_str(alg: &Arc<Algebra>, text: &str) -> Result<LoadedModules> {
    let file: ModuleFile =
        toml::from_str(text).map_err(|e| Error::Parse(format!("module file: {e}")))?;
    let mut labels = Vec::new();
    let mut summands = Vec::new();
    match (&file.dims, file.summand.is_empty()) {
        (Some(dims), true) => {
            summands.push(build_rep(alg, dims, file.matrices.as_ref().unwrap_or(&BTreeMap::new()))?);
            labels.push("M1".to_string());
        }
        (None, false) => {
            for (i, block) in file.summand.iter().enumerate() {
                summands.push(build_rep(alg, &block.dims, &block.matrices)?);
                labels.push(block.label.clone().unwrap_or_else(|| format!("M{}", i + 1)));
            }
        }
        (Some(_), false) => {
            return Err(Error::Parse(
                "module file mixes a top-level module with [[summand]] blocks".into(),
            ))
        }
        (None, true) => {
            return Err(Error::Parse(
                "module file has neither dims nor [[summand]] blocks".into(),
            ))
        }
    }
    Ok(LoadedModules { labels, summands, complete: file.complete.unwrap_or(false) })
}

/// The matrix for an arrow s → t has dims[t] rows and dims[s] columns
/// (vectors are columns); omitted arrows act by zero.
fn build_rep(
    alg: &Arc<Algebra>,
    dims: &[usize],
    matrices: &BTreeMap<String, Vec<Vec<String>>>,
) -> Result<Rep> {
    if dims.len() != alg.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "dims has {} entries but the quiver has {} vertices",
            dims.len(),
            alg.num_vertices()
        )));
    }
    for name in matrices.keys() {
        if !alg.quiver.arrows.iter().any(|a| &a.name == name) {
            return Err(Error::Parse(format!("matrix for unknown arrow \"{name}\"")));
        }
    }
    let field = alg.field;
    let mut maps = Vec::new();
    for arrow in &alg.quiver.arrows {
        let (r, c) = (dims[arrow.tgt], dims[arrow.src]);
        let m = match matrices.get(&arrow.name) {
            None => Matrix::zero(field, r, c),
            Some(rows) => {
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    return Err(Error::DimensionMismatch(format!(
                        "matrix for arrow {} must be {} x {}",
                        arrow.name, r, c
                    )));
                }
                // explicit shape: an empty row list would otherwise forget
                // the column count
                let data = rows
                    .iter()
                    .flat_map(|row| row.iter())
                    .map(|e| Scalar::parse(field, e))
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_vec(field, r, c, data)
            }
        };
        maps.push(m);
    }
    Rep::new(alg.clone(), dims.to_vec(), maps)
}

#[derive(Serialize)]
struct CatalogOut {
    complete: bool,
    summand: Vec<SummandOut>,
}

#[derive(Serialize)]
struct SummandOut {
    label: String,
    dims: Vec<usize>,
    matrices: BTreeMap<String, Vec<Vec<String>>>,
}

/// Renders labelled modules as a `[[summand]]` catalog, readable both as a
/// module file and as an indecomposable catalog.
pub fn write_modules(labelled: &[(String, &Rep)], complete: bool) -> String {
    let out = CatalogOut {
        complete,
        summand: labelled
            .iter()
            .map(|(label, rep)| SummandOut {
                label: label.clone(),
                dims: rep.dims().to_vec(),
                matrices: rep
                    .alg
                    .quiver
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(a, arrow)| {
                        let m = rep.arrow_matrix(a);
                        let rows = (0..m.rows())
                            .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                            .collect();
                        (arrow.name.clone(), rows)
                    })
                    .collect(),
            })
            .collect(),
    };
    toml::to_string(&out).expect("catalog serializes")
}
