//! Bound quiver algebras `kQ/I`.
//!
//! The quotient is realised by degreewise linear algebra: every path of length
//! at most the bound that avoids the monomial relations is a candidate, the
//! ideal is spanned by all `p * r * q` truncated at the bound, and the basis
//! consists of the candidates that are not pivots when candidates are ordered
//! from largest to smallest in length-lex order.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::linalg::{Field, Matrix};
use crate::quiver::{length_lex_cmp, Path, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("relation {index}: {reason}")]
    BadRelation { index: usize, reason: String },
    #[error(
        "length bound too small or ideal not admissible: path {path} of length {bound} survives reduction"
    )]
    BoundTooSmall { path: String, bound: usize },
}

/// A linear combination of parallel paths of length at least two.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation<F: Field> {
    pub terms: Vec<(F::Elem, Path)>,
}

impl<F: Field> Relation<F> {
    pub fn new(terms: Vec<(F::Elem, Path)>) -> Self {
        Relation { terms }
    }

    pub fn monomial(f: &F, path: Path) -> Self {
        Relation {
            terms: vec![(f.one(), path)],
        }
    }

    pub fn reversed(&self) -> Self {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }

    /// Merges repeated paths and drops zero coefficients.
    fn normalised(&self, f: &F) -> Self {
        let mut terms: Vec<(F::Elem, Path)> = Vec::new();
        for (c, p) in &self.terms {
            match terms.iter_mut().find(|(_, q)| q == p) {
                Some((acc, _)) => *acc = f.add(acc, c),
                None => terms.push((c.clone(), p.clone())),
            }
        }
        terms.retain(|(c, _)| !f.is_zero(c));
        Relation { terms }
    }
}

/// Sparse vector over the basis: `(basis index, coefficient)` pairs.
pub type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

#[derive(Debug, Clone)]
pub struct BoundQuiverAlgebra<F: Field> {
    field: F,
    quiver: Quiver,
    relations: Vec<Relation<F>>,
    max_path_length: usize,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    /// Normal forms of candidate paths that are not basis elements.
    reductions: HashMap<Path, Sparse<F>>,
    monomials: HashSet<Vec<usize>>,
    monomial_lengths: Vec<usize>,
    /// `products[i * dim + j]` is `basis[i] * basis[j]`.
    products: Vec<Sparse<F>>,
}

impl<F: Field> PartialEq for BoundQuiverAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.relations == other.relations
            && self.max_path_length == other.max_path_length
    }
}

impl<F: Field> BoundQuiverAlgebra<F> {
    pub fn new(
        field: F,
        quiver: Quiver,
        relations: Vec<Relation<F>>,
        max_path_length: usize,
    ) -> Result<Self, AlgebraError> {
        compute_basis(field, quiver, relations, max_path_length)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn relations(&self) -> &[Relation<F>] {
        &self.relations
    }
    pub fn max_path_length(&self) -> usize {
        self.max_path_length
    }
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    /// Index of the idempotent `e_v` in the basis.
    pub fn idempotent(&self, v: usize) -> usize {
        self.basis_index[&Path::stationary(v)]
    }

    /// Basis indices of paths from `v` to `w`, in basis order.
    pub fn basis_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].source == v && self.basis[i].target == w)
            .collect()
    }

    /// Indices of all non-stationary basis paths; they span the radical.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| !self.basis[i].is_stationary())
            .collect()
    }

    /// Rewrites an arbitrary path in terms of the basis.
    pub fn normal_form(&self, p: &Path) -> Sparse<F> {
        if p.len() >= self.max_path_length || self.has_monomial(&p.arrows) {
            return Vec::new();
        }
        if let Some(&i) = self.basis_index.get(p) {
            return vec![(i, self.field.one())];
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    fn has_monomial(&self, arrows: &[usize]) -> bool {
        if self.monomials.is_empty() {
            return false;
        }
        (1..=arrows.len()).any(|end| {
            self.monomial_lengths
                .iter()
                .take_while(|&&l| l <= end)
                .any(|&l| self.monomials.contains(&arrows[end - l..end]))
        })
    }

    /// Structure constants of `basis[i] * basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &Sparse<F> {
        &self.products[i * self.dim() + j]
    }

    /// Product of two elements given as coefficient vectors over the basis.
    pub fn multiply(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.product(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Unit vector of basis element `i`.
    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn one(&self) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for w in 0..self.num_vertices() {
            v[self.idempotent(w)] = self.field.one();
        }
        v
    }

    /// Normal form of `basis[i]` followed by arrow `a`.
    pub fn times_arrow(&self, i: usize, a: usize) -> Sparse<F> {
        match self.basis[i].compose(&Path::arrow(&self.quiver, a)) {
            Some(p) => self.normal_form(&p),
            None => Vec::new(),
        }
    }

    /// Normal form of arrow `a` followed by `basis[i]`.
    pub fn arrow_times(&self, a: usize, i: usize) -> Sparse<F> {
        match Path::arrow(&self.quiver, a).compose(&self.basis[i]) {
            Some(p) => self.normal_form(&p),
            None => Vec::new(),
        }
    }

    /// The presentation of the opposite algebra: arrows and relation paths reversed.
    pub fn opposite(&self) -> Result<Self, AlgebraError> {
        compute_basis(
            self.field.clone(),
            self.quiver.opposite(),
            self.relations.iter().map(Relation::reversed).collect(),
            self.max_path_length,
        )
    }

    /// Coefficient vector of a sparse element.
    pub fn densify(&self, s: &Sparse<F>) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (i, c) in s {
            v[*i] = self.field.add(&v[*i], c);
        }
        v
    }

    pub fn path_name(&self, i: usize) -> String {
        self.quiver.path_to_string(&self.basis[i])
    }
}

fn validate_relation<F: Field>(
    f: &F,
    q: &Quiver,
    index: usize,
    r: &Relation<F>,
) -> Result<Relation<F>, AlgebraError> {
    let bad = |reason: String| AlgebraError::BadRelation { index, reason };
    for (_, p) in &r.terms {
        if !p.is_valid_in(q) {
            return Err(bad(format!("path {p} is not a path of the quiver")));
        }
        if p.len() < 2 {
            return Err(bad(format!(
                "term {} has length {} < 2 (not admissible)",
                q.path_to_string(p),
                p.len()
            )));
        }
    }
    let r = r.normalised(f);
    if let Some((_, first)) = r.terms.first() {
        if r.terms
            .iter()
            .any(|(_, p)| p.source != first.source || p.target != first.target)
        {
            return Err(bad("terms are not parallel paths".to_string()));
        }
    }
    Ok(r)
}

/// Realises `kQ/I` with paths longer than `max_path_length` treated as zero,
/// failing if any basis path reaches the bound.
pub fn compute_basis<F: Field>(
    field: F,
    quiver: Quiver,
    relations: Vec<Relation<F>>,
    max_path_length: usize,
) -> Result<BoundQuiverAlgebra<F>, AlgebraError> {
    let f = field.clone();
    let mut cleaned = Vec::with_capacity(relations.len());
    for (i, r) in relations.iter().enumerate() {
        cleaned.push(validate_relation(&f, &quiver, i, r)?);
    }

    let monomials: HashSet<Vec<usize>> = cleaned
        .iter()
        .filter(|r| r.terms.len() == 1)
        .map(|r| r.terms[0].1.arrows.clone())
        .collect();
    let mut monomial_lengths: Vec<usize> = monomials.iter().map(Vec::len).collect();
    monomial_lengths.sort_unstable();
    monomial_lengths.dedup();
    let polynomials: Vec<&Relation<F>> = cleaned.iter().filter(|r| r.terms.len() > 1).collect();

    let mut alg = BoundQuiverAlgebra {
        field,
        quiver,
        relations,
        max_path_length,
        basis: Vec::new(),
        basis_index: HashMap::new(),
        reductions: HashMap::new(),
        monomials,
        monomial_lengths,
        products: Vec::new(),
    };

    let candidates = alg.candidate_paths();
    let mut blocks: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
    for p in &candidates {
        blocks
            .entry((p.source, p.target))
            .or_default()
            .push(p.clone());
    }
    // columns from largest to smallest so that pivots are leading terms
    for paths in blocks.values_mut() {
        paths.sort_by(|a, b| length_lex_cmp(b, a));
    }
    let column_of: HashMap<&Path, usize> = blocks
        .values()
        .flat_map(|ps| ps.iter().enumerate().map(|(i, p)| (p, i)))
        .collect();

    let mut rows: HashMap<(usize, usize), Vec<Vec<F::Elem>>> = HashMap::new();
    let ending_at = |v: usize| candidates.iter().filter(move |p| p.target == v);
    let starting_at = |v: usize| candidates.iter().filter(move |p| p.source == v);
    for r in &polynomials {
        let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
        let shortest = r.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
        for left in ending_at(s) {
            if left.len() + shortest > max_path_length {
                continue;
            }
            for right in starting_at(t) {
                if left.len() + shortest + right.len() > max_path_length {
                    continue;
                }
                let block = (left.source, right.target);
                let width = blocks.get(&block).map_or(0, Vec::len);
                let mut row = vec![f.zero(); width];
                let mut nonzero = false;
                for (c, m) in &r.terms {
                    let p = left.compose(m).and_then(|lm| lm.compose(right)).unwrap();
                    if p.len() > max_path_length || alg.has_monomial(&p.arrows) {
                        continue;
                    }
                    let col = column_of[&p];
                    row[col] = f.add(&row[col], c);
                    nonzero = true;
                }
                if nonzero {
                    rows.entry(block).or_default().push(row);
                }
            }
        }
    }

    let mut basis: Vec<Path> = Vec::new();
    type Rewrite<E> = (Path, Vec<(Path, E)>);
    let mut pending: Vec<Rewrite<F::Elem>> = Vec::new();
    let mut block_keys: Vec<&(usize, usize)> = blocks.keys().collect();
    block_keys.sort();
    for key in block_keys {
        let paths = &blocks[key];
        let Some(block_rows) = rows.get(key) else {
            basis.extend(paths.iter().cloned());
            continue;
        };
        let reduced = Matrix::from_rows(&f, paths.len(), block_rows).rref();
        let mut is_pivot = vec![false; paths.len()];
        for &p in &reduced.pivots {
            is_pivot[p] = true;
        }
        for (c, p) in paths.iter().enumerate() {
            if !is_pivot[c] {
                basis.push(p.clone());
            }
        }
        for (r, &pc) in reduced.pivots.iter().enumerate() {
            let combo = (0..paths.len())
                .filter(|&c| !is_pivot[c] && !f.is_zero(reduced.matrix.get(r, c)))
                .map(|c| (paths[c].clone(), f.neg(reduced.matrix.get(r, c))))
                .collect();
            pending.push((paths[pc].clone(), combo));
        }
    }
    basis.sort_by(length_lex_cmp);

    if let Some(p) = basis.iter().find(|p| p.len() >= max_path_length) {
        return Err(AlgebraError::BoundTooSmall {
            path: alg.quiver.path_to_string(p),
            bound: max_path_length,
        });
    }

    alg.basis_index = basis
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    alg.basis = basis;
    for (p, combo) in pending {
        let sparse = combo
            .into_iter()
            .map(|(q, c)| (alg.basis_index[&q], c))
            .collect();
        alg.reductions.insert(p, sparse);
    }

    let n = alg.dim();
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            products.push(match alg.basis[i].compose(&alg.basis[j]) {
                Some(p) => alg.normal_form(&p),
                None => Vec::new(),
            });
        }
    }
    alg.products = products;
    Ok(alg)
}

impl<F: Field> BoundQuiverAlgebra<F> {
    /// Paths of length at most the bound containing no monomial relation.
    fn candidate_paths(&self) -> Vec<Path> {
        let q = &self.quiver;
        let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::stationary).collect();
        let mut layer: Vec<Path> = out.clone();
        for _ in 0..self.max_path_length {
            let mut next = Vec::new();
            for p in &layer {
                for a in q.arrows_from(p.target) {
                    let ext = p.compose(&Path::arrow(q, a)).unwrap();
                    let ends_in_monomial = self
                        .monomial_lengths
                        .iter()
                        .take_while(|&&l| l <= ext.len())
                        .any(|&l| self.monomials.contains(&ext.arrows[ext.len() - l..]));
                    if !ends_in_monomial {
                        next.push(ext);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}
