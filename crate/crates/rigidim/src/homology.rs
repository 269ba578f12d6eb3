//! Resolutions and the homological invariants built from them.
//!
//! Everything here is exact and certificate-driven. A projective dimension is
//! reported as `Exact` only when a syzygy literally vanishes, `Infinite` only
//! when two syzygies are provably isomorphic (the resolution then repeats
//! forever), and `AtLeast` otherwise. The same discipline runs through Ext
//! vanishing: a syzygy cycle lets a scan of finitely many degrees certify
//! vanishing in all degrees, because Ext against a fixed module is shifted
//! along syzygies.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::{Rep, RepMap};
use crate::scalar::Scalar;
use crate::Iso;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

/// A possibly-infinite, possibly-only-bounded dimension value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Exact(usize),
    /// Known to be at least this large; the computation stopped at a cutoff.
    AtLeast(usize),
    Infinite,
}

impl Dim {
    pub fn exact(self) -> Option<usize> {
        match self {
            Dim::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Dim::Infinite
    }

    /// Shift by a constant (resolution degree bookkeeping).
    pub fn plus(self, k: usize) -> Dim {
        match self {
            Dim::Exact(n) => Dim::Exact(n + k),
            Dim::AtLeast(n) => Dim::AtLeast(n + k),
            Dim::Infinite => Dim::Infinite,
        }
    }

    /// Supremum of a nonempty family.
    pub fn sup(dims: impl IntoIterator<Item = Dim>) -> Dim {
        let mut exact_max = 0usize;
        let mut bound_max: Option<usize> = None;
        let mut any = false;
        for d in dims {
            any = true;
            match d {
                Dim::Infinite => return Dim::Infinite,
                Dim::Exact(n) => exact_max = exact_max.max(n),
                Dim::AtLeast(n) => bound_max = Some(bound_max.map_or(n, |b: usize| b.max(n))),
            }
        }
        assert!(any, "sup of an empty family");
        match bound_max {
            // an unresolved member can only push the sup upward
            Some(b) => Dim::AtLeast(b.max(exact_max)),
            None => Dim::Exact(exact_max),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Exact(n) => write!(f, "{n}"),
            Dim::AtLeast(n) => write!(f, ">= {n}"),
            Dim::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Dim", 2)?;
        match self {
            Dim::Exact(n) => {
                st.serialize_field("value", &Some(*n))?;
                st.serialize_field("status", "exact")?;
            }
            Dim::AtLeast(_) => {
                st.serialize_field("value", &None::<usize>)?;
                st.serialize_field("status", "at_least")?;
            }
            Dim::Infinite => {
                st.serialize_field("value", &None::<usize>)?;
                st.serialize_field("status", "infinite")?;
            }
        }
        st.end()
    }
}

/// A minimal projective resolution, extended on demand. Keeps every term,
/// boundary and syzygy; flags when the resolution terminates or when a
/// syzygy repeats (an isomorphism Ω^a M = Ω^b M certifying the resolution
/// never terminates).
pub struct ProjResolution {
    pub module: Rep,
    terms: Vec<Rep>,
    mults: Vec<Vec<usize>>,
    /// maps[0]: P_0 -> M, maps[t]: P_t -> P_{t-1}
    maps: Vec<RepMap>,
    /// syzygies[t] = Ω^{t+1} M (only the nonzero ones are kept)
    syzygies: Vec<Rep>,
    complete: bool,
    cycle: Option<(usize, usize)>,
    /// inclusion of the most recent syzygy into its cover, for assembling the
    /// next boundary
    last_incl: Option<RepMap>,
    rng: ChaCha8Rng,
}

impl ProjResolution {
    pub fn new(module: Rep, seed: u64) -> ProjResolution {
        assert!(!module.is_zero());
        ProjResolution {
            module,
            terms: Vec::new(),
            mults: Vec::new(),
            maps: Vec::new(),
            syzygies: Vec::new(),
            complete: false,
            cycle: None,
            last_incl: None,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Index of the last (possibly only currently) known nonzero term.
    pub fn last_term(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Ω^a M = Ω^b M with a < b, both nonzero (0 meaning M itself).
    pub fn cycle(&self) -> Option<(usize, usize)> {
        self.cycle
    }

    pub fn term(&self, t: usize) -> Option<&Rep> {
        self.terms.get(t)
    }

    pub fn mults_of(&self, t: usize) -> Option<&[usize]> {
        self.mults.get(t).map(Vec::as_slice)
    }

    pub fn boundary(&self, t: usize) -> Option<&RepMap> {
        self.maps.get(t)
    }

    fn extend_one(&mut self) {
        if self.complete {
            return;
        }
        let current = self.syzygies.last().unwrap_or(&self.module).clone();
        let (cover, epi, mults) = current.projective_cover();
        let (kernel, incl) = Rep::kernel(&epi);
        let boundary = if self.terms.is_empty() {
            epi
        } else {
            // lift P_t -> Ω^t M -> P_{t-1}
            let prev_incl = self
                .last_incl
                .as_ref()
                .expect("inclusion of the previous syzygy is retained");
            epi.then(prev_incl)
        };
        self.terms.push(cover);
        self.mults.push(mults);
        self.maps.push(boundary);
        if kernel.is_zero() {
            self.complete = true;
            self.last_incl = None;
            return;
        }
        if self.cycle.is_none() {
            let b = self.syzygies.len() + 1;
            if let Some(a) = self.find_repeat(&kernel) {
                self.cycle = Some((a, b));
            }
        }
        self.syzygies.push(kernel);
        self.last_incl = Some(incl);
    }

    fn find_repeat(&mut self, kernel: &Rep) -> Option<usize> {
        // compare against M = Ω^0 and every stored syzygy
        let candidates: Vec<(usize, Rep)> = std::iter::once((0, self.module.clone()))
            .chain(self.syzygies.iter().cloned().enumerate().map(|(i, s)| (i + 1, s)))
            .collect();
        for (a, prev) in candidates {
            if Rep::is_isomorphic(&prev, kernel, false, &mut self.rng) == Iso::Yes {
                return Some(a);
            }
        }
        None
    }

    /// Make sure terms 0..=t exist (or the resolution is complete earlier).
    pub fn ensure_length(&mut self, t: usize) {
        while !self.complete && self.terms.len() <= t {
            self.extend_one();
        }
    }
}

/// Projective dimension with certificates, stopping at `cutoff`.
pub fn pd_dim(res: &mut ProjResolution, cutoff: usize) -> Dim {
    loop {
        if res.complete {
            return Dim::Exact(res.last_term().expect("at least one term"));
        }
        if res.cycle.is_some() {
            return Dim::Infinite;
        }
        if res.terms.len() > cutoff {
            return Dim::AtLeast(cutoff);
        }
        res.extend_one();
    }
}

pub fn pd(m: &Rep, cutoff: usize, seed: u64) -> Dim {
    if m.is_zero() {
        return Dim::Exact(0);
    }
    let mut res = ProjResolution::new(m.clone(), seed);
    pd_dim(&mut res, cutoff)
}

/// dim Ext^i(M, N) read off the minimal resolution of M.
pub fn ext_dim(res: &mut ProjResolution, n: &Rep, i: usize) -> usize {
    res.ensure_length(i + 1);
    let Some(p_i) = res.term(i) else { return 0 };
    let h_i = Rep::hom_basis(p_i, n).len();
    let rank_in = boundary_rank(res, n, i);
    let rank_out = boundary_rank(res, n, i + 1);
    h_i - rank_in - rank_out
}

/// Rank of Hom(P_{t-1}, N) -> Hom(P_t, N), φ -> φ after d_t.
fn boundary_rank(res: &ProjResolution, n: &Rep, t: usize) -> usize {
    if t == 0 {
        return 0;
    }
    let (Some(_), Some(prev)) = (res.term(t), res.term(t - 1)) else {
        return 0;
    };
    let d = res.boundary(t).expect("boundary exists with its terms");
    let homs = Rep::hom_basis(prev, n);
    if homs.is_empty() {
        return 0;
    }
    let cols: Vec<Vec<Scalar>> = homs.iter().map(|f| d.then(f).vectorize()).collect();
    let len = cols[0].len();
    Matrix::from_columns(n.alg.field, len, cols).rank()
}

/// Where the Ext groups Ext^i(M, N), i >= 1, first fail to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstExt {
    Nonzero(usize),
    /// Certified zero in every positive degree.
    AllZero,
    /// Zero through the cutoff; nothing known beyond.
    ZeroThrough(usize),
}

pub fn first_nonzero_ext(res: &mut ProjResolution, n: &Rep, cutoff: usize) -> FirstExt {
    let mut i = 1;
    loop {
        res.ensure_length(i + 1);
        if res.complete && res.last_term().map_or(true, |last| i > last) {
            return FirstExt::AllZero;
        }
        if let Some((_, b)) = res.cycle {
            if i > b {
                return FirstExt::AllZero;
            }
        }
        if i > cutoff {
            return FirstExt::ZeroThrough(cutoff);
        }
        if ext_dim(res, n, i) > 0 {
            return FirstExt::Nonzero(i);
        }
        i += 1;
    }
}

/// The rigidity degree: how many leading self-extension groups vanish.
/// Exact(d) means Ext^{1..d}(M,M) = 0 and Ext^{d+1}(M,M) != 0; Infinite means
/// all of them vanish.
pub fn rigidity_degree(m: &Rep, cutoff: usize, seed: u64) -> Dim {
    assert!(!m.is_zero());
    let mut res = ProjResolution::new(m.clone(), seed);
    match first_nonzero_ext(&mut res, m, cutoff) {
        FirstExt::Nonzero(i) => Dim::Exact(i - 1),
        FirstExt::AllZero => Dim::Infinite,
        FirstExt::ZeroThrough(c) => Dim::AtLeast(c),
    }
}

pub fn gldim(alg: &Arc<Algebra>, cutoff: usize, seed: u64) -> Dim {
    let dims = (0..alg.num_vertices()).map(|v| pd(&Rep::simple(alg, v), cutoff, seed));
    Dim::sup(dims)
}

/// For each vertex v, the j with I(v) isomorphic to P(j), if any.
pub fn injective_as_projective(alg: &Arc<Algebra>) -> Vec<Option<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let projs: Vec<Rep> = (0..alg.num_vertices()).map(|v| Rep::projective(alg, v)).collect();
    (0..alg.num_vertices())
        .map(|v| {
            let i = Rep::injective(alg, v);
            projs
                .iter()
                .position(|p| Rep::is_isomorphic(&i, p, true, &mut rng) == Iso::Yes)
        })
        .collect()
}

pub fn is_selfinjective(alg: &Arc<Algebra>) -> bool {
    injective_as_projective(alg).iter().all(Option::is_some)
}

/// Dominant dimension: the number of leading projective terms of the minimal
/// injective resolution of the regular module. Infinite for self-injective
/// algebras, and when the resolution terminates while still projective.
pub fn domdim(alg: &Arc<Algebra>, cutoff: usize) -> Dim {
    let table = injective_as_projective(alg);
    if table.iter().all(Option::is_some) {
        return Dim::Infinite;
    }
    let mut current = Rep::regular(alg);
    for t in 0..=cutoff {
        if current.is_zero() {
            return Dim::Infinite;
        }
        let (_, mono, mults) = current.injective_envelope();
        let nonprojective = mults
            .iter()
            .enumerate()
            .any(|(v, &m)| m > 0 && table[v].is_none());
        if nonprojective {
            return Dim::Exact(t);
        }
        current = Rep::cokernel(&mono).0;
    }
    Dim::AtLeast(cutoff)
}

/// Injective dimension of the regular module on the side where modules are
/// the representations used everywhere else (resolved through duality).
pub fn idim_regular(alg: &Arc<Algebra>, cutoff: usize, seed: u64) -> Dim {
    let d = Rep::regular(alg).dual();
    pd(&d, cutoff, seed)
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologicalProfile {
    pub gldim: Dim,
    pub domdim: Dim,
    pub idim_left: Dim,
    pub idim_right: Dim,
    pub selfinjective: bool,
    pub nakayama: bool,
    pub semisimple: bool,
}

pub fn profile(alg: &Arc<Algebra>, cutoff: usize, seed: u64) -> HomologicalProfile {
    let op = alg.opposite();
    HomologicalProfile {
        gldim: gldim(alg, cutoff, seed),
        domdim: domdim(alg, cutoff),
        // left modules are representations of the opposite algebra
        idim_left: idim_regular(&op, cutoff, seed),
        idim_right: idim_regular(alg, cutoff, seed),
        selfinjective: is_selfinjective(alg),
        nakayama: alg.quiver.is_nakayama_shape(),
        semisimple: alg.is_semisimple(),
    }
}

/// Does the split indecomposable `x` lie in add(m)? Exact test: the ideal of
/// End(x) of endomorphisms factoring through m escapes the radical iff the
/// identity factors through a power of m.
pub fn in_add(x: &Rep, m: &Rep) -> Result<bool> {
    let (end, homs) = x.end_algebra_plain()?;
    let field = x.alg.field;
    let fs = Rep::hom_basis(x, m);
    let gs = Rep::hom_basis(m, x);
    if fs.is_empty() || gs.is_empty() {
        return Ok(false);
    }
    let vec_len = homs[0].vectorize().len();
    let basis_mat =
        Matrix::from_columns(field, vec_len, homs.iter().map(RepMap::vectorize).collect());
    let mut prods = Vec::new();
    for f in &fs {
        for g in &gs {
            prods.push(f.then(g).vectorize());
        }
    }
    let coords = basis_mat
        .solve(&Matrix::from_columns(field, vec_len, prods))
        .expect("factoring endomorphisms lie in End");
    let rad = end.radical_basis();
    let rad_rank = rad.rank();
    let joint = Matrix::hstack(&[rad, &coords]);
    Ok(joint.rank() > rad_rank)
}

/// Verdict of the maximal-orthogonality test for one candidate module.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalReport {
    pub self_orthogonal: bool,
    pub is_maximal: bool,
    /// labels of indecomposables witnessing a failure of maximality: both
    /// Ext conditions vanish but the module is not a summand
    pub missing: Vec<usize>,
    /// summand indices that fail the mutual Ext vanishing against the module
    pub failing_summands: Vec<usize>,
}

/// Checks whether ⊕ summands is a maximal n-orthogonal module against a
/// complete catalog of indecomposables.
pub fn max_orthogonal_check(
    summands: &[Rep],
    n: usize,
    catalog: &[Rep],
    seed: u64,
) -> Result<OrthogonalReport> {
    assert!(n >= 1);
    let mut resolutions: Vec<ProjResolution> = summands
        .iter()
        .map(|s| ProjResolution::new(s.clone(), seed))
        .collect();
    let ext_vanishes = |res: &mut ProjResolution, target: &Rep| -> bool {
        (1..=n).all(|i| ext_dim(res, target, i) == 0)
    };

    // Ext^{1..n}(M, M) = 0?
    let mut self_orthogonal = true;
    let mut failing = Vec::new();
    for (i, res) in resolutions.iter_mut().enumerate() {
        for s in summands {
            if !ext_vanishes(res, s) {
                self_orthogonal = false;
                if !failing.contains(&i) {
                    failing.push(i);
                }
            }
        }
    }

    let mut missing = Vec::new();
    if self_orthogonal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (ci, x) in catalog.iter().enumerate() {
            let in_summands = summands
                .iter()
                .any(|s| Rep::is_isomorphic(x, s, true, &mut rng) == Iso::Yes);
            if in_summands {
                continue;
            }
            let mut x_res = ProjResolution::new(x.clone(), seed);
            let to_m = resolutions.iter_mut().all(|res| ext_vanishes(res, x));
            let from_m = summands.iter().all(|s| ext_vanishes(&mut x_res, s));
            if to_m && from_m {
                missing.push(ci);
            }
        }
    }
    Ok(OrthogonalReport {
        self_orthogonal,
        is_maximal: self_orthogonal && missing.is_empty(),
        missing,
        failing_summands: failing,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NodesReport {
    /// vertex names whose simple modules are nodes
    pub nodes: Vec<String>,
    /// least m >= 1 with Ω^m S = S for some node S; None when there are no
    /// nodes
    pub rho: Option<usize>,
}

/// Nodes of a self-injective algebra and the shortest syzygy period among
/// them. A weakly connected component contributes nodes exactly when it is a
/// non-semisimple Nakayama component of Loewy length two; all its simples are
/// then nodes, and the syzygy walks each simple one step around the cycle, so
/// the period is the length of the shortest such cycle.
pub fn nodes_and_rho(alg: &Arc<Algebra>) -> Result<NodesReport> {
    if !is_selfinjective(alg) {
        return Err(Error::NotSelfInjective);
    }
    let quiver = &alg.quiver;
    let mut next = vec![None; quiver.vertices.len()];
    let mut outdeg = vec![0usize; quiver.vertices.len()];
    let mut indeg = vec![0usize; quiver.vertices.len()];
    for a in &quiver.arrows {
        outdeg[a.src] += 1;
        indeg[a.tgt] += 1;
        next[a.src] = Some(a.tgt);
    }
    let mut nodes = Vec::new();
    let mut node_vertices = Vec::new();
    for comp in quiver.components() {
        let has_arrows = comp.iter().any(|&v| outdeg[v] > 0);
        if !has_arrows {
            continue; // semisimple component: no nodes
        }
        let serial = comp.iter().all(|&v| outdeg[v] <= 1 && indeg[v] <= 1);
        // Loewy length two: no surviving path of length two starts in the
        // component (paths never leave their component)
        let loewy_two = comp
            .iter()
            .all(|&v| alg.basis().iter().all(|p| p.degree() < 2 || p.src != v));
        if serial && loewy_two {
            for &v in &comp {
                node_vertices.push(v);
                nodes.push(quiver.vertices[v].clone());
            }
        }
    }
    let rho = node_vertices
        .iter()
        .map(|&v| {
            // orbit length of v under "follow the unique outgoing arrow"
            let mut w = next[v].expect("node component is a cycle");
            let mut len = 1;
            while w != v {
                w = next[w].expect("node component is a cycle");
                len += 1;
            }
            len
        })
        .min();
    Ok(NodesReport { nodes, rho })
}

/// Independent degree-one extension count: cocycles of arrow maps modulo
/// coboundaries. An extension of M by N is a block representation
/// [[N_a, η_a], [0, M_a]]; the relations force the cocycle condition and
/// conjugating the splitting alters η by N_a φ - φ M_a.
pub fn ext1_cocycle_dim(m: &Rep, n: &Rep) -> usize {
    assert!(Arc::ptr_eq(&m.alg, &n.alg));
    let alg = &m.alg;
    let field = alg.field;
    let arrows = &alg.quiver.arrows;

    let mut offsets = Vec::with_capacity(arrows.len());
    let mut unknowns = 0usize;
    for a in arrows {
        offsets.push(unknowns);
        unknowns += n.dims()[a.tgt] * m.dims()[a.src];
    }
    if unknowns == 0 {
        return 0;
    }

    // cocycle condition, one block row per relation
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for rel in &alg.relations {
        let path0 = &rel.terms[0].1;
        let src = arrows[path0[0]].src;
        let tgt = arrows[*path0.last().unwrap()].tgt;
        let (rows_n, cols_m) = (n.dims()[tgt], m.dims()[src]);
        if rows_n * cols_m == 0 {
            continue;
        }
        let mut block_rows = vec![vec![Scalar::zero(field); unknowns]; rows_n * cols_m];
        for (c, path) in &rel.terms {
            let coeff = Scalar::from_i64(field, *c);
            for i in 0..path.len() {
                let a = path[i];
                // N-suffix after position i, M-prefix before it
                let suffix = n.path_matrix(&path[i + 1..], arrows[a].tgt);
                let prefix = m.path_matrix(&path[..i], src);
                // contribution: suffix * η_a * prefix
                for r in 0..suffix.rows() {
                    for cc in 0..prefix.cols() {
                        for k in 0..suffix.cols() {
                            let sv = suffix.get(r, k);
                            if sv.is_zero() {
                                continue;
                            }
                            for l in 0..prefix.rows() {
                                let pv = prefix.get(l, cc);
                                if pv.is_zero() {
                                    continue;
                                }
                                let u = offsets[a] + k * m.dims()[arrows[a].src] + l;
                                let entry = &mut block_rows[r * cols_m + cc][u];
                                *entry = entry.add(&coeff.mul(sv).mul(pv));
                            }
                        }
                    }
                }
            }
        }
        rows.extend(block_rows.into_iter().filter(|r| r.iter().any(|s| !s.is_zero())));
    }
    let z_dim = if rows.is_empty() {
        unknowns
    } else {
        unknowns - Matrix::from_rows(field, rows).rank()
    };

    // coboundaries: η_a = N_a φ_s - φ_t M_a over all vertex maps φ
    let mut cob_cols: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..alg.num_vertices() {
        for r in 0..n.dims()[v] {
            for c in 0..m.dims()[v] {
                let mut col = vec![Scalar::zero(field); unknowns];
                for (a, arrow) in arrows.iter().enumerate() {
                    if arrow.src == v {
                        // (N_a φ)[i, c] picks column r of N_a
                        for i in 0..n.dims()[arrow.tgt] {
                            let nv = n.arrow_matrix(a).get(i, r);
                            if !nv.is_zero() {
                                let u = offsets[a] + i * m.dims()[v] + c;
                                col[u] = col[u].add(nv);
                            }
                        }
                    }
                    if arrow.tgt == v {
                        // -(φ M_a)[r, j] picks row c of M_a
                        for j in 0..m.dims()[arrow.src] {
                            let mv = m.arrow_matrix(a).get(c, j);
                            if !mv.is_zero() {
                                let u = offsets[a] + r * m.dims()[arrow.src] + j;
                                col[u] = col[u].sub(mv);
                            }
                        }
                    }
                }
                cob_cols.push(col);
            }
        }
    }
    let b_dim = if cob_cols.is_empty() {
        0
    } else {
        Matrix::from_columns(field, unknowns, cob_cols).rank()
    };
    z_dim - b_dim
}
