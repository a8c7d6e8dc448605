use crate::linalg::{Field, Matrix, RowSpace};
use crate::rep::{ModuleMap, RepError, Representation, Submodule};

/// Whether the ends of a sequence are required to be exact too.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactnessMode {
    /// `0 -> M_0 -> ... -> M_k -> 0`: the first map is injective and the last
    /// surjective.
    Bounded,
    /// Only the junctions between consecutive maps.
    Interior,
}

/// Dimension data at one module of the sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Junction {
    /// Position of the module in the sequence, counting from the first domain.
    pub position: usize,
    pub kernel_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub junctions: Vec<Junction>,
}

impl ExactnessCertificate {
    pub fn is_exact(&self) -> bool {
        self.junctions.iter().all(|j| j.exact)
    }
}

/// Checks `ker f_{k+1} = im f_k` at every junction, by subspace equality.
pub fn verify_exact_sequence<F: Field>(
    maps: &[ModuleMap<F>],
    mode: ExactnessMode,
) -> Result<ExactnessCertificate, RepError> {
    for (k, pair) in maps.windows(2).enumerate() {
        if pair[0].codomain().dims() != pair[1].domain().dims() {
            return Err(RepError::NotComposable(k));
        }
    }
    let mut junctions = Vec::new();
    if mode == ExactnessMode::Bounded {
        if let Some(first) = maps.first() {
            let kernel = first.kernel();
            junctions.push(Junction {
                position: 0,
                kernel_dims: kernel.dims(),
                image_dims: vec![0; kernel.spaces.len()],
                composite_zero: true,
                exact: kernel.total_dim() == 0,
            });
        }
    }
    for (k, pair) in maps.windows(2).enumerate() {
        let image = pair[0].image();
        let kernel = pair[1].kernel();
        let composite_zero = kernel.contains(&image);
        junctions.push(Junction {
            position: k + 1,
            kernel_dims: kernel.dims(),
            image_dims: image.dims(),
            composite_zero,
            exact: composite_zero && image == kernel,
        });
    }
    if mode == ExactnessMode::Bounded {
        if let Some(last) = maps.last() {
            let image = last.image();
            let full = last.codomain().dims().to_vec();
            junctions.push(Junction {
                position: maps.len(),
                kernel_dims: full.clone(),
                image_dims: image.dims(),
                composite_zero: true,
                exact: image.dims() == full,
            });
        }
    }
    Ok(ExactnessCertificate { junctions })
}

/// A bounded window `X^lo -> ... -> X^hi` of a cochain complex.
#[derive(Debug, Clone)]
pub struct ComplexWindow<F: Field> {
    pub lo: i64,
    pub hi: i64,
    /// `terms[d - lo]` is `X^d`.
    pub terms: Vec<Representation<F>>,
    /// `differentials[d - lo]` is `X^d -> X^{d+1}`.
    pub differentials: Vec<ModuleMap<F>>,
}

impl<F: Field> ComplexWindow<F> {
    pub fn new(
        lo: i64,
        terms: Vec<Representation<F>>,
        differentials: Vec<ModuleMap<F>>,
    ) -> Result<Self, RepError> {
        if terms.is_empty() || differentials.len() + 1 != terms.len() {
            return Err(RepError::Invalid(
                "a window needs one differential between each pair of terms".into(),
            ));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.domain().dims() != terms[k].dims() || d.codomain().dims() != terms[k + 1].dims() {
                return Err(RepError::NotComposable(k));
            }
        }
        let hi = lo + terms.len() as i64 - 1;
        Ok(ComplexWindow {
            lo,
            hi,
            terms,
            differentials,
        })
    }

    pub fn term(&self, d: i64) -> Option<&Representation<F>> {
        if d < self.lo || d > self.hi {
            return None;
        }
        self.terms.get((d - self.lo) as usize)
    }

    /// `d^{k+1} d^k = 0` throughout the window.
    pub fn squares_to_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|p| p[0].then(&p[1]).map(|c| c.is_zero()).unwrap_or(false))
    }
}

/// `H^d = ker d^d / im d^{d-1}`, defined only strictly inside the window.
pub fn complex_cohomology<F: Field>(
    c: &ComplexWindow<F>,
    d: i64,
) -> Result<Representation<F>, RepError> {
    if d <= c.lo || d >= c.hi {
        return Err(RepError::Invalid(format!(
            "degree {d} is not strictly inside the window [{}, {}]",
            c.lo, c.hi
        )));
    }
    let k = (d - c.lo) as usize;
    let incoming = &c.differentials[k - 1];
    let outgoing = &c.differentials[k];
    let kernel = outgoing.kernel();
    let image = incoming.image();
    if !kernel.contains(&image) {
        return Err(RepError::Invalid(format!("d^{d} d^{} is not zero", d - 1)));
    }
    let (z, _) = c.terms[k].submodule(&kernel);
    // the image in the kernel's coordinates
    let f = z.field().clone();
    let spaces = image
        .spaces
        .iter()
        .zip(&kernel.spaces)
        .map(|(im, ker)| {
            let rows: Vec<Vec<F::Elem>> = im
                .basis()
                .row_vecs()
                .iter()
                .map(|r| ker.coords(r).expect("image lies in the kernel"))
                .collect();
            RowSpace::span(&Matrix::from_rows(&f, ker.dim(), &rows))
        })
        .collect();
    Ok(z.quotient(&Submodule { spaces }).0)
}
