//! Finite-dimensional representations of a bound quiver algebra.
//!
//! A representation assigns a space to every vertex and a matrix to every
//! arrow; paths act by composing arrow matrices in traversal order, so these
//! are the modules on which a path p acts by "walk along p". Projectives,
//! injectives, covers, envelopes, kernels and cokernels are all computed
//! vertexwise with exact linear algebra.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::scalg::ScAlgebra;
use crate::Iso;
use rand::Rng;
use std::sync::Arc;

#[derive(Clone)]
pub struct Rep {
    pub alg: Arc<Algebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Rep) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.dims == other.dims && self.maps == other.maps
    }
}

impl std::fmt::Debug for Rep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rep{:?}", self.dims)
    }
}

impl Rep {
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        if dims.len() != alg.num_vertices() || maps.len() != alg.quiver.arrows.len() {
            return Err(Error::DimensionMismatch(
                "wrong number of vertex dimensions or arrow matrices".into(),
            ));
        }
        for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
            let m = &maps[a];
            if m.rows() != dims[arrow.tgt] || m.cols() != dims[arrow.src] {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for arrow {} must be {} x {}, got {} x {}",
                    arrow.name,
                    dims[arrow.tgt],
                    dims[arrow.src],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for arrow {} is over the wrong field",
                    arrow.name
                )));
            }
        }
        let rep = Rep { alg, dims, maps };
        for rel in &rep.alg.relations {
            let (src, tgt) = {
                let p = &rel.terms[0].1;
                let q = &rep.alg.quiver;
                (q.arrows[p[0]].src, q.arrows[*p.last().unwrap()].tgt)
            };
            let mut sum = Matrix::zero(rep.alg.field, rep.dims[tgt], rep.dims[src]);
            for (c, path) in &rel.terms {
                let m = rep.path_matrix(path, src);
                sum = sum.add(&m.scale(&Scalar::from_i64(rep.alg.field, *c)));
            }
            if !sum.is_zero() {
                return Err(Error::Parse(
                    "matrices do not satisfy the algebra relations".into(),
                ));
            }
        }
        Ok(rep)
    }

    /// Trusted constructor for internally-built representations.
    fn raw(alg: Arc<Algebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Rep {
        Rep { alg, dims, maps }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Rep {
        let dims = vec![0; alg.num_vertices()];
        let maps = alg
            .quiver
            .arrows
            .iter()
            .map(|_| Matrix::zero(alg.field, 0, 0))
            .collect();
        Rep::raw(alg.clone(), dims, maps)
    }

    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Rep {
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let maps = alg
            .quiver
            .arrows
            .iter()
            .map(|a| Matrix::zero(alg.field, dims[a.tgt], dims[a.src]))
            .collect();
        Rep::raw(alg.clone(), dims, maps)
    }

    /// The indecomposable projective at `v`: basis paths leaving `v`, arrows
    /// acting by extending the walk.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Rep {
        let nv = alg.num_vertices();
        let field = alg.field;
        // local basis at w = global indices of paths v -> w
        let mut local: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (i, p) in alg.basis().iter().enumerate() {
            if p.src == v {
                local[p.tgt].push(i);
            }
        }
        let pos = |w: usize, g: usize| local[w].iter().position(|&x| x == g).unwrap();
        let dims: Vec<usize> = local.iter().map(Vec::len).collect();
        let maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut m = Matrix::zero(field, dims[arrow.tgt], dims[arrow.src]);
                for (col, &g) in local[arrow.src].iter().enumerate() {
                    for (k, c) in alg.mul_basis(g, alg.arrow_index(a)) {
                        m.set(pos(arrow.tgt, *k), col, c.clone());
                    }
                }
                m
            })
            .collect();
        Rep::raw(alg.clone(), dims, maps)
    }

    pub fn injective(alg: &Arc<Algebra>, v: usize) -> Rep {
        Rep::projective(&alg.opposite(), v).dual()
    }

    /// The regular representation, as the tagged sum of all indecomposable
    /// projectives in vertex order.
    pub fn regular(alg: &Arc<Algebra>) -> Rep {
        let parts: Vec<Rep> = (0..alg.num_vertices()).map(|v| Rep::projective(alg, v)).collect();
        let refs: Vec<&Rep> = parts.iter().collect();
        Rep::direct_sum(alg, &refs)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    /// Matrix of the action of a path starting at `src` (identity for the
    /// trivial path).
    pub fn path_matrix(&self, arrows: &[usize], src: usize) -> Matrix {
        let mut m = Matrix::identity(self.alg.field, self.dims[src]);
        for &a in arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn apply_path(&self, arrows: &[usize], v: Vec<Scalar>) -> Vec<Scalar> {
        let mut v = v;
        for &a in arrows {
            v = self.maps[a].apply(&v);
        }
        v
    }

    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[&Rep]) -> Rep {
        for p in parts {
            assert!(Arc::ptr_eq(&p.alg, alg));
        }
        let nv = alg.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = (0..alg.quiver.arrows.len())
            .map(|a| {
                let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.maps[a]).collect();
                if blocks.is_empty() {
                    Matrix::zero(alg.field, dims[alg.quiver.arrows[a].tgt], dims[alg.quiver.arrows[a].src])
                } else {
                    Matrix::block_diag(alg.field, &blocks)
                }
            })
            .collect();
        Rep::raw(alg.clone(), dims, maps)
    }

    /// Per-part, per-vertex starting offsets inside the direct sum.
    pub fn sum_offsets(parts: &[&Rep]) -> Vec<Vec<usize>> {
        let nv = parts.first().map_or(0, |p| p.dims.len());
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = vec![0usize; nv];
        for p in parts {
            offsets.push(acc.clone());
            for v in 0..nv {
                acc[v] += p.dims[v];
            }
        }
        offsets
    }

    /// The dual representation over the opposite algebra.
    pub fn dual(&self) -> Rep {
        let op = self.alg.opposite();
        let maps = self.maps.iter().map(Matrix::transpose).collect();
        Rep::raw(op, self.dims.clone(), maps)
    }

    /// Basis of the space of homomorphisms, solved from the arrow-commutation
    /// equations.
    pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<RepMap> {
        assert!(Arc::ptr_eq(&m.alg, &n.alg));
        let alg = &m.alg;
        let field = alg.field;
        let nv = alg.num_vertices();
        let mut offsets = Vec::with_capacity(nv);
        let mut unknowns = 0;
        for v in 0..nv {
            offsets.push(unknowns);
            unknowns += n.dims[v] * m.dims[v];
        }
        if unknowns == 0 {
            return Vec::new();
        }
        let mut rows = Vec::new();
        for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
            let (s, t) = (arrow.src, arrow.tgt);
            let am = &m.maps[a];
            let an = &n.maps[a];
            for i in 0..n.dims[t] {
                for j in 0..m.dims[s] {
                    // (f_t * am - an * f_s)[i, j] = 0
                    let mut row = vec![Scalar::zero(field); unknowns];
                    for c in 0..m.dims[t] {
                        let v = am.get(c, j);
                        if !v.is_zero() {
                            let u = offsets[t] + i * m.dims[t] + c;
                            row[u] = row[u].add(v);
                        }
                    }
                    for r in 0..n.dims[s] {
                        let v = an.get(i, r);
                        if !v.is_zero() {
                            let u = offsets[s] + r * m.dims[s] + j;
                            row[u] = row[u].sub(v);
                        }
                    }
                    if row.iter().any(|s| !s.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let ker = if rows.is_empty() {
            Matrix::identity(field, unknowns)
        } else {
            Matrix::from_rows(field, rows).kernel()
        };
        (0..ker.cols())
            .map(|j| RepMap::from_vectorized(m.clone(), n.clone(), &ker.column(j)))
            .collect()
    }

    /// rad(M) = sum of all arrow images, as (subrepresentation, inclusion).
    pub fn radical_subrep(&self) -> (Rep, RepMap) {
        let alg = &self.alg;
        let field = alg.field;
        let nv = alg.num_vertices();
        let mut incl: Vec<Matrix> = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut cols = Vec::new();
            for (a, arrow) in alg.quiver.arrows.iter().enumerate() {
                if arrow.tgt == v {
                    for c in 0..self.dims[arrow.src] {
                        cols.push(self.maps[a].column(c));
                    }
                }
            }
            incl.push(Matrix::from_columns(field, self.dims[v], cols).column_space_basis());
        }
        self.subrep_from_inclusions(incl)
    }

    fn subrep_from_inclusions(&self, incl: Vec<Matrix>) -> (Rep, RepMap) {
        let alg = &self.alg;
        let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
        let maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let img = self.maps[a].mul(&incl[arrow.src]);
                if dims[arrow.tgt] == 0 {
                    Matrix::zero(alg.field, 0, dims[arrow.src])
                } else {
                    incl[arrow.tgt].solve(&img).expect("subspace is arrow-stable")
                }
            })
            .collect();
        let sub = Rep::raw(alg.clone(), dims, maps);
        let map = RepMap::raw(sub.clone(), self.clone(), incl);
        (sub, map)
    }

    /// top(M) = M / rad(M) with its quotient projection. The top carries zero
    /// arrow maps.
    pub fn top_quotient(&self) -> (Rep, RepMap) {
        let alg = &self.alg;
        let (_, incl) = self.radical_subrep();
        let mut projs = Vec::new();
        let mut sections = Vec::new();
        for v in 0..alg.num_vertices() {
            let qm = incl.blocks[v].quotient_projection();
            projs.push(qm.proj);
            sections.push(qm.section);
        }
        let dims: Vec<usize> = projs.iter().map(Matrix::rows).collect();
        let maps: Vec<Matrix> = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let m = projs[arrow.tgt].mul(&self.maps[a]).mul(&sections[arrow.src]);
                debug_assert!(m.is_zero(), "top must be semisimple");
                m
            })
            .collect();
        let top = Rep::raw(alg.clone(), dims, maps);
        let map = RepMap::raw(self.clone(), top.clone(), projs);
        (top, map)
    }

    /// Minimal projective cover: (P, epi, mults) where P = ⊕_v P(v)^{mults[v]}
    /// with blocks in vertex order.
    pub fn projective_cover(&self) -> (Rep, RepMap, Vec<usize>) {
        let alg = &self.alg;
        let nv = alg.num_vertices();
        let (_, incl) = self.radical_subrep();
        // lifts of a top basis: coset representatives from the quotient section
        let mut lifts: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(nv);
        for v in 0..nv {
            let qm = incl.blocks[v].quotient_projection();
            lifts.push((0..qm.section.cols()).map(|c| qm.section.column(c)).collect());
        }
        let mults: Vec<usize> = lifts.iter().map(Vec::len).collect();

        let mut parts: Vec<Rep> = Vec::new();
        for v in 0..nv {
            let p = Rep::projective(alg, v);
            for _ in 0..mults[v] {
                parts.push(p.clone());
            }
        }
        let refs: Vec<&Rep> = parts.iter().collect();
        let cover = Rep::direct_sum(alg, &refs);

        // epi columns at vertex w, indexed by (v, copy, path v -> w): this is
        // exactly the basis order of the direct sum, since P(v) lists its
        // basis at w as the paths v -> w in algebra order
        let mut blocks = Vec::with_capacity(nv);
        for w in 0..nv {
            let mut ordered: Vec<Vec<Scalar>> = Vec::new();
            for v in 0..nv {
                let paths: Vec<&crate::algebra::BasisPath> =
                    alg.basis().iter().filter(|p| p.src == v && p.tgt == w).collect();
                for lift in &lifts[v] {
                    for p in &paths {
                        ordered.push(self.apply_path(&p.arrows, lift.clone()));
                    }
                }
            }
            blocks.push(Matrix::from_columns(alg.field, self.dims[w], ordered));
        }
        let epi = RepMap::raw(cover.clone(), self.clone(), blocks);
        debug_assert!(epi.is_morphism());
        debug_assert!(epi.blocks.iter().enumerate().all(|(v, b)| b.rank() == self.dims[v]));
        (cover, epi, mults)
    }

    /// Minimal injective envelope: (I, mono, mults) with I = ⊕_v I(v)^{mults[v]}.
    pub fn injective_envelope(&self) -> (Rep, RepMap, Vec<usize>) {
        let (cover, epi, mults) = self.dual().projective_cover();
        (cover.dual(), epi.dual(), mults)
    }

    pub fn kernel(f: &RepMap) -> (Rep, RepMap) {
        let incl: Vec<Matrix> = f.blocks.iter().map(Matrix::kernel).collect();
        f.dom.subrep_from_inclusions(incl)
    }

    pub fn cokernel(f: &RepMap) -> (Rep, RepMap) {
        let alg = &f.cod.alg;
        let mut projs = Vec::new();
        let mut sections = Vec::new();
        for b in &f.blocks {
            let qm = b.quotient_projection();
            projs.push(qm.proj);
            sections.push(qm.section);
        }
        let dims: Vec<usize> = projs.iter().map(Matrix::rows).collect();
        let maps = alg
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                projs[arrow.tgt].mul(f.cod.arrow_matrix(a)).mul(&sections[arrow.src])
            })
            .collect();
        let coker = Rep::raw(alg.clone(), dims, maps);
        let map = RepMap::raw(f.cod.clone(), coker.clone(), projs);
        (coker, map)
    }

    /// First syzygy: kernel of a minimal projective cover.
    pub fn syzygy(&self) -> Rep {
        let (_, epi, _) = self.projective_cover();
        Rep::kernel(&epi).0
    }

    /// First cosyzygy: cokernel of a minimal injective envelope.
    pub fn cosyzygy(&self) -> Rep {
        let (_, mono, _) = self.injective_envelope();
        Rep::cokernel(&mono).0
    }

    /// The endomorphism ring as a structure-constant algebra (no idempotent
    /// data), together with the hom basis realizing its elements.
    pub fn end_algebra_plain(&self) -> Result<(Arc<ScAlgebra>, Vec<RepMap>)> {
        let field = self.alg.field;
        let homs = Rep::hom_basis(self, self);
        let t = homs.len();
        let vec_len: usize = homs.first().map_or(0, |h| h.vectorize().len());
        let basis_mat = Matrix::from_columns(
            field,
            vec_len,
            homs.iter().map(|h| h.vectorize()).collect(),
        );
        let mut products = Vec::with_capacity(t * t);
        for hi in &homs {
            for hj in &homs {
                // product "first hi then hj"
                products.push(hi.then(hj).vectorize());
            }
        }
        let prod_mat = Matrix::from_columns(field, vec_len, products);
        let coords = basis_mat.solve(&prod_mat).expect("End is closed under composition");
        let mut table = vec![vec![Vec::new(); t]; t];
        for i in 0..t {
            for j in 0..t {
                table[i][j] = coords.column(i * t + j);
            }
        }
        let unit = basis_mat
            .solve(&Matrix::from_columns(field, vec_len, vec![RepMap::identity(self).vectorize()]))
            .expect("identity is an endomorphism")
            .column(0);
        let sc = ScAlgebra::new(field, table, unit, Vec::new())?;
        Ok((sc, homs))
    }

    /// Indecomposable with endomorphism ring local and split over the ground
    /// field. This is the summand condition under which endomorphism-ring
    /// computations downstream are valid.
    pub fn is_split_indec(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        Ok(self.end_algebra_plain()?.0.is_split_local())
    }

    /// Isomorphism test; exact when both sides are known indecomposable,
    /// otherwise randomized with an honest `Unknown` fallback.
    pub fn is_isomorphic<R: Rng>(m: &Rep, n: &Rep, both_indec: bool, rng: &mut R) -> Iso {
        if m.dims != n.dims {
            return Iso::No;
        }
        if m.is_zero() {
            return Iso::Yes;
        }
        let hom = Rep::hom_basis(m, n);
        if hom.is_empty() {
            return Iso::No;
        }
        if hom.iter().any(RepMap::is_invertible) {
            return Iso::Yes;
        }
        if both_indec {
            return Iso::No;
        }
        if Rep::hom_basis(n, m).len() != hom.len() {
            return Iso::No;
        }
        let field = m.alg.field;
        for trial in 0..48 {
            let bound = 1 + (trial / 8) as i64;
            let mut combo = RepMap::zero_map(m.clone(), n.clone());
            for h in &hom {
                combo = combo.add(&h.scale(&Scalar::random_small(rng, field, bound)));
            }
            if combo.is_invertible() {
                return Iso::Yes;
            }
        }
        Iso::Unknown
    }
}

/// A homomorphism of representations: one block per vertex.
#[derive(Clone)]
pub struct RepMap {
    pub dom: Rep,
    pub cod: Rep,
    pub blocks: Vec<Matrix>,
}

impl RepMap {
    fn raw(dom: Rep, cod: Rep, blocks: Vec<Matrix>) -> RepMap {
        debug_assert_eq!(blocks.len(), dom.dims.len());
        RepMap { dom, cod, blocks }
    }

    pub fn new(dom: Rep, cod: Rep, blocks: Vec<Matrix>) -> RepMap {
        let m = RepMap::raw(dom, cod, blocks);
        debug_assert!(m.is_morphism());
        m
    }

    pub fn identity(m: &Rep) -> RepMap {
        let blocks = m.dims.iter().map(|&d| Matrix::identity(m.alg.field, d)).collect();
        RepMap::raw(m.clone(), m.clone(), blocks)
    }

    pub fn zero_map(dom: Rep, cod: Rep) -> RepMap {
        let field = dom.alg.field;
        let blocks = dom
            .dims
            .iter()
            .zip(&cod.dims)
            .map(|(&d, &c)| Matrix::zero(field, c, d))
            .collect();
        RepMap::raw(dom, cod, blocks)
    }

    pub fn is_morphism(&self) -> bool {
        self.dom.alg.quiver.arrows.iter().enumerate().all(|(a, arrow)| {
            self.blocks[arrow.tgt].mul(self.dom.arrow_matrix(a))
                == self.cod.arrow_matrix(a).mul(&self.blocks[arrow.src])
        })
    }

    /// Composition "first self, then g".
    pub fn then(&self, g: &RepMap) -> RepMap {
        debug_assert!(self.cod == g.dom);
        let blocks = self
            .blocks
            .iter()
            .zip(&g.blocks)
            .map(|(f, gg)| gg.mul(f))
            .collect();
        RepMap::raw(self.dom.clone(), g.cod.clone(), blocks)
    }

    pub fn add(&self, other: &RepMap) -> RepMap {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        RepMap::raw(self.dom.clone(), self.cod.clone(), blocks)
    }

    pub fn scale(&self, s: &Scalar) -> RepMap {
        let blocks = self.blocks.iter().map(|b| b.scale(s)).collect();
        RepMap::raw(self.dom.clone(), self.cod.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    /// The dual map over the opposite algebra (contravariant).
    pub fn dual(&self) -> RepMap {
        let blocks = self.blocks.iter().map(Matrix::transpose).collect();
        RepMap::raw(self.cod.dual(), self.dom.dual(), blocks)
    }

    /// Concatenation of blocks, vertex order, each row-major.
    pub fn vectorize(&self) -> Vec<Scalar> {
        let mut v = Vec::new();
        for b in &self.blocks {
            v.extend(b.vectorize());
        }
        v
    }

    pub fn from_vectorized(dom: Rep, cod: Rep, data: &[Scalar]) -> RepMap {
        let field = dom.alg.field;
        let mut blocks = Vec::with_capacity(dom.dims.len());
        let mut at = 0;
        for v in 0..dom.dims.len() {
            let (r, c) = (cod.dims[v], dom.dims[v]);
            blocks.push(Matrix::from_vec(field, r, c, data[at..at + r * c].to_vec()));
            at += r * c;
        }
        debug_assert_eq!(at, data.len());
        RepMap::raw(dom, cod, blocks)
    }

    /// Assemble one map out of a direct sum from maps with a common codomain:
    /// `sum` must be the direct sum of the domains in order.
    pub fn stack(sum: &Rep, homs: &[RepMap]) -> RepMap {
        let cod = homs[0].cod.clone();
        let nv = sum.dims.len();
        let mut blocks = Vec::with_capacity(nv);
        for v in 0..nv {
            let parts: Vec<&Matrix> = homs.iter().map(|h| &h.blocks[v]).collect();
            blocks.push(Matrix::hstack(&parts));
        }
        RepMap::raw(sum.clone(), cod, blocks)
    }
}
