//! Bound quiver algebras kQ/I with length-homogeneous admissible relations.
//!
//! The basis is computed degree by degree: paths of length d modulo the
//! degree-d slice of the two-sided ideal (spanned by products p·r·q around
//! each relation r). Construction stops at the first empty degree — once a
//! whole degree dies, every longer path is a product through it. Paths
//! compose left to right: in `u * v` the path u is traversed first.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub const DEFAULT_MAX_PATH_LENGTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// A quiver presents a Nakayama (serial) algebra exactly when every
    /// vertex has at most one incoming and one outgoing arrow.
    pub fn is_nakayama_shape(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for a in &self.arrows {
            outdeg[a.src] += 1;
            indeg[a.tgt] += 1;
        }
        indeg.iter().all(|&d| d <= 1) && outdeg.iter().all(|&d| d <= 1)
    }

    /// Vertex sets of the weakly connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.src].push(a.tgt);
            adj[a.tgt].push(a.src);
        }
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A signed integer combination of parallel paths, each path a left-to-right
/// sequence of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisPath {
    pub arrows: Vec<usize>,
    pub src: usize,
    pub tgt: usize,
}

impl BasisPath {
    pub fn degree(&self) -> usize {
        self.arrows.len()
    }
}

pub struct Algebra {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    basis: Vec<BasisPath>,
    /// table[u * dim + v] = coordinates of basis[u] * basis[v]
    table: Vec<Vec<(usize, Scalar)>>,
    /// Least N with no surviving paths of length N (so rad^N = 0).
    pub nilpotency: usize,
    arrow_basis: Vec<usize>,
    opp: OnceLock<Arc<Algebra>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra(dim {}, {} vertices, {} arrows, field {})",
            self.dim(),
            self.quiver.vertices.len(),
            self.quiver.arrows.len(),
            self.field
        )
    }
}

impl Algebra {
    pub fn new(
        field: FieldSpec,
        quiver: Quiver,
        relations: Vec<Relation>,
        max_path_length: usize,
    ) -> Result<Arc<Algebra>> {
        validate_relations(&quiver, &relations)?;
        let nv = quiver.vertices.len();
        let na = quiver.arrows.len();

        // arrows in name order so path enumeration is lexicographic by name
        let mut arrow_order: Vec<usize> = (0..na).collect();
        arrow_order.sort_by(|&a, &b| quiver.arrows[a].name.cmp(&quiver.arrows[b].name));

        // per degree: raw paths (arrow index sequences), index map, and the
        // reduction of each raw path onto that degree's surviving basis
        let mut raws: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        let mut raw_idx: Vec<BTreeMap<Vec<usize>, usize>> = vec![BTreeMap::new()];
        let mut reduce: Vec<Vec<Vec<(usize, Scalar)>>> = vec![Vec::new()];
        let mut surviving: Vec<Vec<usize>> = vec![Vec::new()]; // raw indices that are basis

        let mut nilpotency = None;
        for d in 1..=max_path_length {
            let mut level: Vec<Vec<usize>> = Vec::new();
            if d == 1 {
                for &a in &arrow_order {
                    level.push(vec![a]);
                }
            } else {
                for p in &raws[d - 1] {
                    let end = quiver.arrows[*p.last().unwrap()].tgt;
                    for &a in &arrow_order {
                        if quiver.arrows[a].src == end {
                            let mut q = p.clone();
                            q.push(a);
                            level.push(q);
                        }
                    }
                }
            }
            if level.is_empty() {
                nilpotency = Some(d);
                break;
            }
            let idx: BTreeMap<Vec<usize>, usize> =
                level.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

            // span of the ideal in this degree
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for rel in &relations {
                let rl = rel.terms[0].1.len();
                if rl > d {
                    continue;
                }
                let (rsrc, rtgt) = rel_endpoints(&quiver, rel);
                for left_deg in 0..=(d - rl) {
                    let right_deg = d - rl - left_deg;
                    let lefts: Vec<Vec<usize>> = paths_ending_at(&quiver, &raws, left_deg, rsrc);
                    let rights: Vec<Vec<usize>> =
                        paths_starting_at(&quiver, &raws, right_deg, rtgt);
                    for lp in &lefts {
                        for rp in &rights {
                            let mut row = vec![Scalar::zero(field); level.len()];
                            for (c, m) in &rel.terms {
                                let mut path = lp.clone();
                                path.extend_from_slice(m);
                                path.extend_from_slice(rp);
                                let k = idx[&path];
                                row[k] = row[k].add(&Scalar::from_i64(field, *c));
                            }
                            rows.push(row);
                        }
                    }
                }
            }

            let (level_surviving, level_reduce) = if rows.is_empty() {
                let red: Vec<Vec<(usize, Scalar)>> = (0..level.len())
                    .map(|i| vec![(i, Scalar::one(field))])
                    .collect();
                ((0..level.len()).collect::<Vec<_>>(), red)
            } else {
                let mat = Matrix::from_rows(field, rows);
                let red = mat.rref();
                let pivots = &red.pivots;
                let free: Vec<usize> =
                    (0..level.len()).filter(|c| !pivots.contains(c)).collect();
                let local_of: BTreeMap<usize, usize> =
                    free.iter().enumerate().map(|(l, &c)| (c, l)).collect();
                let mut per_raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); level.len()];
                for (l, &c) in free.iter().enumerate() {
                    per_raw[c] = vec![(l, Scalar::one(field))];
                }
                for (pr, &pc) in pivots.iter().enumerate() {
                    let mut coords = Vec::new();
                    for &f in &free {
                        let v = red.mat.get(pr, f);
                        if !v.is_zero() {
                            coords.push((local_of[&f], v.neg()));
                        }
                    }
                    per_raw[pc] = coords;
                }
                (free, per_raw)
            };

            if level_surviving.is_empty() {
                nilpotency = Some(d);
                break;
            }
            raws.push(level);
            raw_idx.push(idx);
            reduce.push(level_reduce);
            surviving.push(level_surviving);
        }

        let Some(nilpotency) = nilpotency else {
            return Err(Error::NotFiniteDimensional { max: max_path_length });
        };

        // assemble the global basis: units first, then survivors by degree
        let mut basis: Vec<BasisPath> = (0..nv)
            .map(|v| BasisPath { arrows: Vec::new(), src: v, tgt: v })
            .collect();
        let mut global_of: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
        for d in 1..nilpotency {
            let mut level_map = BTreeMap::new();
            for &raw in &surviving[d] {
                let arrows = raws[d][raw].clone();
                let src = quiver.arrows[arrows[0]].src;
                let tgt = quiver.arrows[*arrows.last().unwrap()].tgt;
                level_map.insert(raw, basis.len());
                basis.push(BasisPath { arrows, src, tgt });
            }
            global_of.push(level_map);
        }

        let dim = basis.len();
        let mut table: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for u in 0..dim {
            for v in 0..dim {
                if basis[u].tgt != basis[v].src {
                    continue;
                }
                let d = basis[u].degree() + basis[v].degree();
                if d >= nilpotency {
                    continue;
                }
                if d == 0 {
                    // unit * unit at the same vertex
                    table[u * dim + v] = vec![(u, Scalar::one(field))];
                    continue;
                }
                let mut path = basis[u].arrows.clone();
                path.extend_from_slice(&basis[v].arrows);
                let raw = raw_idx[d][&path];
                let coords: Vec<(usize, Scalar)> = reduce[d][raw]
                    .iter()
                    .map(|(local, s)| {
                        let raw_of_local = surviving[d][*local];
                        (global_of[d][&raw_of_local], s.clone())
                    })
                    .collect();
                table[u * dim + v] = coords;
            }
        }

        let arrow_basis = (0..na)
            .map(|a| basis.iter().position(|p| p.arrows == [a]).expect("arrow survives"))
            .collect();

        Ok(Arc::new(Algebra {
            field,
            quiver,
            relations,
            basis,
            table,
            nilpotency,
            arrow_basis,
            opp: OnceLock::new(),
        }))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    /// Basis index of the trivial path at a vertex.
    pub fn unit_index(&self, v: usize) -> usize {
        v
    }

    /// Basis index of a length-one path.
    pub fn arrow_index(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    pub fn mul_basis(&self, u: usize, v: usize) -> &[(usize, Scalar)] {
        &self.table[u * self.dim() + v]
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        assert_eq!(x.len(), dim);
        assert_eq!(y.len(), dim);
        let mut out = vec![Scalar::zero(self.field); dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.mul_basis(i, j) {
                    out[*k] = out[*k].add(&xi.mul(yj).mul(c));
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = vec![Scalar::zero(self.field); self.dim()];
        for v in 0..self.num_vertices() {
            u[self.unit_index(v)] = Scalar::one(self.field);
        }
        u
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        let mut e = vec![Scalar::zero(self.field); self.dim()];
        e[i] = Scalar::one(self.field);
        e
    }

    pub fn is_semisimple(&self) -> bool {
        self.nilpotency == 1
    }

    /// The opposite algebra, built by reversing every basis path in place; the
    /// basis stays index-aligned and the table transposes. Applying it twice
    /// returns the original algebra (same allocation).
    pub fn opposite(self: &Arc<Algebra>) -> Arc<Algebra> {
        if let Some(o) = self.opp.get() {
            return o.clone();
        }
        let quiver = Quiver {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), src: a.tgt, tgt: a.src })
                .collect(),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|(c, p)| (*c, p.iter().rev().cloned().collect()))
                    .collect(),
            })
            .collect();
        let basis = self
            .basis
            .iter()
            .map(|p| BasisPath {
                arrows: p.arrows.iter().rev().cloned().collect(),
                src: p.tgt,
                tgt: p.src,
            })
            .collect();
        let dim = self.dim();
        let mut table = vec![Vec::new(); dim * dim];
        for u in 0..dim {
            for v in 0..dim {
                table[u * dim + v] = self.table[v * dim + u].clone();
            }
        }
        let op = Arc::new(Algebra {
            field: self.field,
            quiver,
            relations,
            basis,
            table,
            nilpotency: self.nilpotency,
            arrow_basis: self.arrow_basis.clone(),
            opp: OnceLock::new(),
        });
        let _ = op.opp.set(self.clone());
        let _ = self.opp.set(op);
        self.opp.get().unwrap().clone()
    }

    /// Block-diagonal product algebra. Vertices and arrows of the factors are
    /// prefixed "1." and "2.".
    pub fn direct_product(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>> {
        if a.field != b.field {
            return Err(Error::Unsupported("product of algebras over different fields".into()));
        }
        let va = a.num_vertices();
        let na = a.quiver.arrows.len();
        let prefix = |tag: usize, s: &str| format!("{}.{}", tag + 1, s);
        let quiver = Quiver {
            vertices: a
                .quiver
                .vertices
                .iter()
                .map(|v| prefix(0, v))
                .chain(b.quiver.vertices.iter().map(|v| prefix(1, v)))
                .collect(),
            arrows: a
                .quiver
                .arrows
                .iter()
                .map(|r| Arrow { name: prefix(0, &r.name), src: r.src, tgt: r.tgt })
                .chain(b.quiver.arrows.iter().map(|r| Arrow {
                    name: prefix(1, &r.name),
                    src: r.src + va,
                    tgt: r.tgt + va,
                }))
                .collect(),
        };
        let shift_path = |tag: usize, p: &[usize]| -> Vec<usize> {
            p.iter().map(|&x| if tag == 0 { x } else { x + na }).collect()
        };
        let relations = a
            .relations
            .iter()
            .map(|r| (0usize, r))
            .chain(b.relations.iter().map(|r| (1usize, r)))
            .map(|(tag, r)| Relation {
                terms: r.terms.iter().map(|(c, p)| (*c, shift_path(tag, p))).collect(),
            })
            .collect();

        // interleave bases by degree so units come first in vertex order
        let mut order: Vec<(usize, usize)> = Vec::new(); // (block, original index)
        let max_n = a.nilpotency.max(b.nilpotency);
        for d in 0..max_n {
            for (tag, alg) in [(0usize, a), (1usize, b)] {
                for (i, p) in alg.basis.iter().enumerate() {
                    if p.degree() == d {
                        order.push((tag, i));
                    }
                }
            }
        }
        let mut global = vec![BTreeMap::new(), BTreeMap::new()];
        let mut basis = Vec::new();
        for (pos, &(tag, i)) in order.iter().enumerate() {
            global[tag].insert(i, pos);
            let alg = if tag == 0 { a } else { b };
            let p = &alg.basis[i];
            basis.push(BasisPath {
                arrows: shift_path(tag, &p.arrows),
                src: if tag == 0 { p.src } else { p.src + va },
                tgt: if tag == 0 { p.tgt } else { p.tgt + va },
            });
        }
        let dim = basis.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (u, &(tu, iu)) in order.iter().enumerate() {
            for (v, &(tv, iv)) in order.iter().enumerate() {
                if tu != tv {
                    continue;
                }
                let alg = if tu == 0 { a } else { b };
                table[u * dim + v] = alg
                    .mul_basis(iu, iv)
                    .iter()
                    .map(|(k, s)| (global[tu][k], s.clone()))
                    .collect();
            }
        }
        let arrow_basis = (0..na)
            .map(|x| global[0][&a.arrow_basis[x]])
            .chain((0..b.quiver.arrows.len()).map(|x| global[1][&b.arrow_basis[x]]))
            .collect();
        Ok(Arc::new(Algebra {
            field: a.field,
            quiver,
            relations,
            basis,
            table,
            nilpotency: max_n,
            arrow_basis,
            opp: OnceLock::new(),
        }))
    }

    pub fn path_label(&self, i: usize) -> String {
        let p = &self.basis[i];
        if p.arrows.is_empty() {
            format!("e_{}", self.quiver.vertices[p.src])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.quiver.arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// Structural equality of presentations (same vertices, arrows, basis
    /// paths and multiplication table).
    pub fn same_presentation(&self, other: &Algebra) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.basis == other.basis
            && self.table == other.table
    }
}

fn rel_endpoints(quiver: &Quiver, rel: &Relation) -> (usize, usize) {
    let p = &rel.terms[0].1;
    (quiver.arrows[p[0]].src, quiver.arrows[*p.last().unwrap()].tgt)
}

fn paths_ending_at(
    quiver: &Quiver,
    raws: &[Vec<Vec<usize>>],
    degree: usize,
    vertex: usize,
) -> Vec<Vec<usize>> {
    if degree == 0 {
        return vec![Vec::new()]; // the trivial path at `vertex`
    }
    raws[degree]
        .iter()
        .filter(|p| quiver.arrows[*p.last().unwrap()].tgt == vertex)
        .cloned()
        .collect()
}

fn paths_starting_at(
    quiver: &Quiver,
    raws: &[Vec<Vec<usize>>],
    degree: usize,
    vertex: usize,
) -> Vec<Vec<usize>> {
    if degree == 0 {
        return vec![Vec::new()];
    }
    raws[degree]
        .iter()
        .filter(|p| quiver.arrows[p[0]].src == vertex)
        .cloned()
        .collect()
}

fn validate_relations(quiver: &Quiver, relations: &[Relation]) -> Result<()> {
    for rel in relations {
        let terms: Vec<&(i64, Vec<usize>)> = rel.terms.iter().filter(|(c, _)| *c != 0).collect();
        if terms.is_empty() {
            return Err(Error::NotAdmissible("relation with no nonzero terms".into()));
        }
        let mut endpoints = None;
        let len = terms[0].1.len();
        for (_, path) in &terms {
            if path.is_empty() {
                return Err(Error::NotAdmissible("empty path in relation".into()));
            }
            if path.len() != len {
                return Err(Error::NotHomogeneous(
                    "terms of a relation must have equal path length".into(),
                ));
            }
            for w in path.windows(2) {
                if quiver.arrows[w[0]].tgt != quiver.arrows[w[1]].src {
                    return Err(Error::NotAdmissible("non-composable path in relation".into()));
                }
            }
            let ep = (quiver.arrows[path[0]].src, quiver.arrows[*path.last().unwrap()].tgt);
            match endpoints {
                None => endpoints = Some(ep),
                Some(e) if e == ep => {}
                _ => {
                    return Err(Error::NotAdmissible(
                        "terms of a relation must share source and target".into(),
                    ))
                }
            }
        }
        if len < 2 {
            return Err(Error::NotAdmissible("relations must have length at least two".into()));
        }
    }
    Ok(())
}

/// Brute-force associativity scan over all basis triples (intended for small
/// algebras in tests).
pub fn check_associativity(alg: &Algebra) -> bool {
    let dim = alg.dim();
    for u in 0..dim {
        let eu = alg.basis_element(u);
        for v in 0..dim {
            let ev = alg.basis_element(v);
            let uv = alg.multiply(&eu, &ev);
            for w in 0..dim {
                let ew = alg.basis_element(w);
                let vw = alg.multiply(&ev, &ew);
                if alg.multiply(&uv, &ew) != alg.multiply(&eu, &vw) {
                    return false;
                }
            }
        }
    }
    true
}
