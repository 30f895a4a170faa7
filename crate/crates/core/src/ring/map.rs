use std::sync::Arc;

use super::field::{Field, Rational};
use super::poly::Polynomial;
use super::spec::RingSpec;
use crate::error::{Error, Result};

/// Ring homomorphism `target -> source` given by the images of the target
/// variables, i.e. the pullback of a polynomial map `source -> target`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingMap<F: Field = Rational> {
    source: Arc<RingSpec>,
    target: Arc<RingSpec>,
    images: Vec<Polynomial<F>>,
}

/// The ring `source ++ target` holding the graph of a map, with the indices
/// of both variable groups inside it.
#[derive(Clone, Debug)]
pub struct GraphRing {
    pub ring: Arc<RingSpec>,
    pub source_vars: Vec<usize>,
    pub target_vars: Vec<usize>,
}

impl GraphRing {
    pub fn source_of<F: Field>(&self, p: &Polynomial<F>) -> Polynomial<F> {
        p.embed(&self.ring, &self.source_vars)
    }

    pub fn target_of<F: Field>(&self, p: &Polynomial<F>) -> Polynomial<F> {
        p.embed(&self.ring, &self.target_vars)
    }
}

impl<F: Field> RingMap<F> {
    pub fn new(source: Arc<RingSpec>, target: Arc<RingSpec>, images: Vec<Polynomial<F>>) -> Result<Self> {
        if images.len() != target.nvars() {
            return Err(Error::Validation(format!(
                "ring map needs {} images, got {}",
                target.nvars(),
                images.len()
            )));
        }
        if source.field() != target.field() {
            return Err(Error::RingMismatch);
        }
        for p in &images {
            if **p.ring() != *source {
                return Err(Error::RingMismatch);
            }
        }
        Ok(RingMap { source, target, images })
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial<F>] {
        &self.images
    }

    pub fn pullback(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if **p.ring() != *self.target {
            return Err(Error::RingMismatch);
        }
        p.substitute(&self.images)
    }

    /// Whether every image vanishes at the origin (a germ map at 0).
    pub fn preserves_origin(&self) -> bool {
        self.images.iter().all(|p| p.constant_term().is_zero())
    }

    pub fn graph_ring(&self) -> GraphRing {
        let ring = self.source.extend("target", self.target.names());
        let ns = self.source.nvars();
        GraphRing {
            ring,
            source_vars: (0..ns).collect(),
            target_vars: (ns..ns + self.target.nvars()).collect(),
        }
    }

    /// Generators `y_j - phi_j(x)` of the graph ideal.
    pub fn graph_generators(&self, graph: &GraphRing) -> Vec<Polynomial<F>> {
        self.images
            .iter()
            .enumerate()
            .map(|(j, img)| {
                let y = Polynomial::var(&graph.ring, graph.target_vars[j]);
                &y - &graph.source_of(img)
            })
            .collect()
    }

    /// Jacobian rows: `rows[j][i] = d phi_j / d x_i`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial<F>>> {
        let vars: Vec<usize> = (0..self.source.nvars()).collect();
        self.images.iter().map(|p| p.gradient(&vars)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_pullback_and_graph() {
        let src = RingSpec::new(&["x"]).unwrap();
        let tgt = RingSpec::new(&["y1", "y2"]).unwrap();
        let images = vec![
            Polynomial::parse("x^2", &src).unwrap(),
            Polynomial::parse("x^3", &src).unwrap(),
        ];
        let phi: RingMap = RingMap::new(src.clone(), tgt.clone(), images).unwrap();
        let g = Polynomial::parse("y1^3 - y2^2", &tgt).unwrap();
        assert!(phi.pullback(&g).unwrap().is_zero());
        let graph = phi.graph_ring();
        assert_eq!(graph.ring.names().len(), 3);
        let gens = phi.graph_generators(&graph);
        assert_eq!(gens[0].to_string(), "-x^2 + y1");
    }

    #[test]
    fn clashing_names_are_renamed() {
        let src = RingSpec::new(&["x"]).unwrap();
        let tgt = RingSpec::new(&["x"]).unwrap();
        let phi: RingMap = RingMap::new(src.clone(), tgt, vec![Polynomial::parse("x", &src).unwrap()]).unwrap();
        let graph = phi.graph_ring();
        assert_eq!(graph.ring.names(), &["x".to_string(), "x_".to_string()][..]);
    }
}
