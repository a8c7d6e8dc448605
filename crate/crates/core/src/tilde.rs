//! The one-point extension by dual numbers at every vertex.
//!
//! For a bound quiver algebra `A` with vertices `1..n`, the algebra `Ã` adds a
//! vertex `i~` for every `i`, a connecting arrow `u_i: i~ -> i` and a loop
//! `x_i` at `i~`, subject to `u_i a = 0` for every arrow `a` leaving `i`,
//! `x_i u_i = 0` and `x_i^2 = 0`. Its projectives at the new vertices are
//! three-dimensional with square-zero radical.

use std::sync::Arc;

use crate::algebra::{AlgebraError, BoundQuiverAlgebra, Relation};
use crate::linalg::Field;
use crate::quiver::{Path, Quiver, QuiverError};
use crate::rep::{same_algebra, Alg, RepError, Representation};

#[derive(Debug, Clone)]
pub struct TildePresentation<F: Field> {
    base: Alg<F>,
    result: Alg<F>,
    tilde_vertex: Vec<usize>,
    connector: Vec<usize>,
    loop_arrow: Vec<usize>,
}

pub fn tilde_vertex_label(label: &str) -> String {
    format!("{label}~")
}

/// Builds the presentation of `Ã` from that of `A`.
pub fn build_tilde<F: Field>(base: Alg<F>) -> Result<TildePresentation<F>, AlgebraError> {
    let f = base.field().clone();
    let q = base.quiver();
    let n = q.num_vertices();
    let mut tq: Quiver = q.clone();
    let mut tilde_vertex = Vec::with_capacity(n);
    for v in q.vertices() {
        tilde_vertex.push(tq.add_vertex(&tilde_vertex_label(v))?);
    }
    let mut connector = Vec::with_capacity(n);
    for (i, v) in q.vertices().iter().enumerate() {
        let tv = tq.vertex_label(tilde_vertex[i]).to_string();
        connector.push(tq.add_arrow(&format!("u_{v}"), &tv, v)?);
    }
    let mut loop_arrow = Vec::with_capacity(n);
    for (i, v) in q.vertices().iter().enumerate() {
        let tv = tq.vertex_label(tilde_vertex[i]).to_string();
        loop_arrow.push(tq.add_arrow(&format!("x_{v}"), &tv, &tv)?);
    }

    // old vertices and arrows keep their indices, so old relations carry over
    let mut relations: Vec<Relation<F>> = base.relations().to_vec();
    let path = |arrows: Vec<usize>| -> Result<Path, QuiverError> {
        let names: Vec<&str> = arrows.iter().map(|&a| tq.arrow(a).name.as_str()).collect();
        tq.path_from_names(&names)
    };
    for (i, &u) in connector.iter().enumerate() {
        for a in q.arrows_from(i) {
            relations.push(Relation::monomial(&f, path(vec![u, a])?));
        }
    }
    for (&x, &u) in loop_arrow.iter().zip(&connector) {
        relations.push(Relation::monomial(&f, path(vec![x, u])?));
        relations.push(Relation::monomial(&f, path(vec![x, x])?));
    }
    let bound = base.max_path_length().max(3);
    let result = BoundQuiverAlgebra::new(f, tq, relations, bound)?;
    Ok(TildePresentation {
        base,
        result: Arc::new(result),
        tilde_vertex,
        connector,
        loop_arrow,
    })
}

impl<F: Field> TildePresentation<F> {
    pub fn base(&self) -> &Alg<F> {
        &self.base
    }
    pub fn result(&self) -> &Alg<F> {
        &self.result
    }
    /// Number of vertices of the base algebra.
    pub fn rank(&self) -> usize {
        self.tilde_vertex.len()
    }
    pub fn tilde_vertex(&self, i: usize) -> usize {
        self.tilde_vertex[i]
    }
    pub fn connector(&self, i: usize) -> usize {
        self.connector[i]
    }
    pub fn loop_arrow(&self, i: usize) -> usize {
        self.loop_arrow[i]
    }

    /// The opposite of `Ã`.
    pub fn opposite(&self) -> Result<Alg<F>, AlgebraError> {
        Ok(Arc::new(self.result.opposite()?))
    }

    /// Views an `A`-module as an `Ã`-module through `Ã -> A`: zero at the new
    /// vertices, the new arrows acting by zero.
    pub fn inflate(&self, m: &Representation<F>) -> Result<Representation<F>, RepError> {
        if !same_algebra(m.algebra(), &self.base) {
            return Err(RepError::AlgebraMismatch);
        }
        let mut dims = m.dims().to_vec();
        dims.extend(std::iter::repeat_n(0, self.rank()));
        let mut out = Representation::with_dims(&self.result, dims);
        let mut maps = out.arrow_maps().to_vec();
        for (a, map) in m.arrow_maps().iter().enumerate() {
            maps[a] = map.clone();
        }
        out = Representation::from_parts(self.result.clone(), out.dims().to_vec(), maps);
        Ok(out)
    }

    /// Restricts an `Ã`-module to the old vertices and arrows.
    pub fn restrict(&self, m: &Representation<F>) -> Result<Representation<F>, RepError> {
        if !same_algebra(m.algebra(), &self.result) {
            return Err(RepError::AlgebraMismatch);
        }
        let n = self.rank();
        let dims = m.dims()[..n].to_vec();
        let arrows = self.base.quiver().num_arrows();
        let maps = m.arrow_maps()[..arrows].to_vec();
        Ok(Representation::from_parts(self.base.clone(), dims, maps))
    }
}
