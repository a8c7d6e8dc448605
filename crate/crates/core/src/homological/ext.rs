//! `Ext^n(M, S_v)` from a possibly non-minimal projective resolution.
//!
//! This path never uses tops or radicals: covers come from explicit generating
//! sets and `Ext` is the cohomology of `Hom(P_•, S_v)`.

use crate::linalg::{Field, Matrix, RowSpace};
use crate::rep::{flatten_map, hom_space, ModuleMap, Representation, Submodule};

use super::resolution::{cover_from_generators, PdVerdict};

/// How generators of each module in the resolution are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorStrategy {
    /// Every basis vector of every vertex space. Grows exponentially.
    FullBasis,
    /// Unit vectors in basis order, skipped when already in the submodule
    /// generated so far.
    Greedy,
}

fn generators<F: Field>(
    m: &Representation<F>,
    strategy: GeneratorStrategy,
) -> Vec<(usize, Vec<F::Elem>)> {
    let f = m.field();
    let unit = |v: usize, c: usize| {
        let mut x = vec![f.zero(); m.dim_at(v)];
        x[c] = f.one();
        (v, x)
    };
    let mut gens = Vec::new();
    match strategy {
        GeneratorStrategy::FullBasis => {
            for v in 0..m.dims().len() {
                gens.extend((0..m.dim_at(v)).map(|c| unit(v, c)));
            }
        }
        GeneratorStrategy::Greedy => {
            let mut span = Submodule::zero(m);
            for v in 0..m.dims().len() {
                for c in 0..m.dim_at(v) {
                    let g = unit(v, c);
                    if !span.spaces[v].contains(&g.1) {
                        span.close_with(m, vec![g.clone()]);
                        gens.push(g);
                    }
                }
            }
        }
    }
    gens
}

/// Projective terms `P_0..P_{len-1}` with differentials; `maps[0]: P_0 -> M`.
pub struct ProjectiveResolution<F: Field> {
    pub terms: Vec<Representation<F>>,
    pub maps: Vec<ModuleMap<F>>,
}

/// Resolution with `len` projective terms, or fewer if a kernel vanishes.
pub fn resolve_with<F: Field>(
    m: &Representation<F>,
    len: usize,
    strategy: GeneratorStrategy,
) -> ProjectiveResolution<F> {
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    let mut current = m.clone();
    let mut inclusion: Option<ModuleMap<F>> = None;
    for _ in 0..len {
        if current.is_zero() {
            break;
        }
        let cover = cover_from_generators(&current, generators(&current, strategy));
        let d = match &inclusion {
            Some(inc) => cover.map.then(inc).expect("composable"),
            None => cover.map.clone(),
        };
        let kernel = cover.map.kernel();
        let (next, inc) = cover.projective.submodule(&kernel);
        terms.push(cover.projective);
        maps.push(d);
        current = next;
        inclusion = Some(inc);
    }
    ProjectiveResolution { terms, maps }
}

/// `Hom(P, N)` as a row space of flattened maps.
fn hom_rows<F: Field>(p: &Representation<F>, n: &Representation<F>) -> RowSpace<F> {
    let f = p.field();
    let hom = hom_space(p, n).expect("same algebra");
    let total: usize = p.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    let rows: Vec<Vec<F::Elem>> = hom.basis.iter().map(flatten_map).collect();
    RowSpace::span(&Matrix::from_rows(f, total, &rows))
}

fn unflatten<F: Field>(
    f: &F,
    row: &[F::Elem],
    p: &Representation<F>,
    n: &Representation<F>,
) -> Vec<Matrix<F>> {
    let mut start = 0;
    p.dims()
        .iter()
        .zip(n.dims())
        .map(|(&a, &b)| {
            let m = Matrix::from_vec(f, a, b, row[start..start + a * b].to_vec());
            start += a * b;
            m
        })
        .collect()
}

/// Rank of `Hom(P_k, N) -> Hom(P_{k+1}, N)`, `φ ↦ d_{k+1} φ`.
fn induced_rank<F: Field>(d: &ModuleMap<F>, source: &RowSpace<F>, n: &Representation<F>) -> usize {
    let f = n.field();
    let (p_next, p) = (d.domain(), d.codomain());
    let rows: Vec<Vec<F::Elem>> = source
        .basis()
        .row_vecs()
        .iter()
        .map(|row| {
            unflatten(f, row, p, n)
                .iter()
                .zip(d.components())
                .flat_map(|(phi, dv)| dv.mul(phi).entries().to_vec())
                .collect()
        })
        .collect();
    let total: usize = p_next.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    Matrix::from_rows(f, total, &rows).rank()
}

/// `dim Ext^k(M, N)` for `k = 0..=max_degree`.
pub fn ext_dims_with<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
    max_degree: usize,
    strategy: GeneratorStrategy,
) -> Vec<usize> {
    let res = resolve_with(m, max_degree + 2, strategy);
    ext_from_resolution(&res, n, max_degree)
}

fn ext_from_resolution<F: Field>(
    res: &ProjectiveResolution<F>,
    n: &Representation<F>,
    max_degree: usize,
) -> Vec<usize> {
    let homs: Vec<RowSpace<F>> = res.terms.iter().map(|p| hom_rows(p, n)).collect();
    // rank of Hom(P_k) -> Hom(P_{k+1})
    let ranks: Vec<usize> = (0..homs.len())
        .map(|k| match res.maps.get(k + 1) {
            Some(d) => induced_rank(d, &homs[k], n),
            None => 0,
        })
        .collect();
    (0..=max_degree)
        .map(|k| match homs.get(k) {
            Some(h) => h.dim() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 },
            None => 0,
        })
        .collect()
}

/// `dim Ext^k(M, S_v)` indexed `[k][v]`.
pub fn ext_simple_dims<F: Field>(
    m: &Representation<F>,
    max_degree: usize,
    strategy: GeneratorStrategy,
) -> Vec<Vec<usize>> {
    let alg = m.algebra();
    let n = alg.num_vertices();
    let res = resolve_with(m, max_degree + 2, strategy);
    let per_vertex: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let s = Representation::simple(alg, v).expect("vertex in range");
            ext_from_resolution(&res, &s, max_degree)
        })
        .collect();
    (0..=max_degree)
        .map(|k| per_vertex.iter().map(|d| d[k]).collect())
        .collect()
}

/// Projective dimension read off `Ext(M, ⊕ S_v)`, with the same cutoff
/// semantics as the resolution engine.
pub fn pd_from_ext<F: Field>(
    m: &Representation<F>,
    cutoff: usize,
    strategy: GeneratorStrategy,
) -> PdVerdict {
    if m.is_zero() {
        return PdVerdict::ZeroModule;
    }
    let ext = ext_simple_dims(m, cutoff, strategy);
    for (k, row) in ext.iter().enumerate() {
        if row.iter().all(|&d| d == 0) {
            return PdVerdict::Finite(k - 1);
        }
    }
    PdVerdict::AtLeast(cutoff)
}
