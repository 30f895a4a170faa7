use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A multiplicative total order on monomials.
///
/// Global orderings put every variable above 1 (polynomial rings), local ones
/// put every variable below 1 (localizations at the origin); block orderings
/// may mix both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrdering {
    DegRevLex,
    Lex,
    NegDegRevLex,
    /// Weighted degree, ties broken by degrevlex. All weights positive gives
    /// a global order, all negative a local one.
    Weighted(Vec<i64>),
    /// Lexicographic product of orderings on disjoint variable blocks; the
    /// first block dominates.
    Block(Vec<(Vec<usize>, MonomialOrdering)>),
}

type Proj = SmallVec<[u32; 8]>;

fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn total(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

impl MonomialOrdering {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrdering::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex_tail(a.exponents(), b.exponents())),
            MonomialOrdering::NegDegRevLex => b
                .degree()
                .cmp(&a.degree())
                .then_with(|| revlex_tail(a.exponents(), b.exponents())),
            _ => self.compare_slices(a.exponents(), b.exponents()),
        }
    }

    fn compare_slices(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrdering::DegRevLex => total(a).cmp(&total(b)).then_with(|| revlex_tail(a, b)),
            MonomialOrdering::NegDegRevLex => total(b).cmp(&total(a)).then_with(|| revlex_tail(a, b)),
            MonomialOrdering::Lex => {
                for (x, y) in a.iter().zip(b) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrdering::Weighted(w) => {
                let wa: i128 = a.iter().zip(w).map(|(&e, &w)| e as i128 * w as i128).sum();
                let wb: i128 = b.iter().zip(w).map(|(&e, &w)| e as i128 * w as i128).sum();
                wa.cmp(&wb)
                    .then_with(|| total(a).cmp(&total(b)).then_with(|| revlex_tail(a, b)))
            }
            MonomialOrdering::Block(blocks) => {
                for (idx, ord) in blocks {
                    let pa: Proj = idx.iter().map(|&i| a[i]).collect();
                    let pb: Proj = idx.iter().map(|&i| b[i]).collect();
                    let c = ord.compare_slices(&pa, &pb);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Checks the ordering is well-formed for a ring with `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrdering::Weighted(w) => {
                if w.len() != nvars {
                    return Err(Error::InvalidOrdering(format!(
                        "weight vector has {} entries for {} variables",
                        w.len(),
                        nvars
                    )));
                }
                if !(w.iter().all(|&x| x > 0) || w.iter().all(|&x| x < 0)) {
                    return Err(Error::InvalidOrdering(
                        "weights must be all positive or all negative".into(),
                    ));
                }
                Ok(())
            }
            MonomialOrdering::Block(blocks) => {
                let mut seen = vec![false; nvars];
                for (idx, ord) in blocks {
                    if idx.is_empty() {
                        return Err(Error::InvalidOrdering("empty block".into()));
                    }
                    for &i in idx {
                        if i >= nvars || seen[i] {
                            return Err(Error::InvalidOrdering(format!(
                                "variable index {i} is out of range or repeated"
                            )));
                        }
                        seen[i] = true;
                    }
                    ord.validate(idx.len())?;
                }
                if seen.iter().any(|s| !s) {
                    return Err(Error::InvalidOrdering("blocks do not cover every variable".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// How each variable compares with 1.
    pub fn variable_signs(&self, nvars: usize) -> Vec<Ordering> {
        let one = Monomial::one(nvars);
        (0..nvars)
            .map(|i| self.compare(&Monomial::var(nvars, i, 1), &one))
            .collect()
    }

    pub fn is_global(&self, nvars: usize) -> bool {
        self.variable_signs(nvars).iter().all(|s| *s == Ordering::Greater)
    }

    pub fn is_local(&self, nvars: usize) -> bool {
        self.variable_signs(nvars).iter().all(|s| *s == Ordering::Less)
    }

    /// Local orderings refining the negated total degree. For these a full
    /// staircase below degree `D` implies `m^D` lies in the ideal.
    pub fn is_local_degree(&self) -> bool {
        match self {
            MonomialOrdering::NegDegRevLex => true,
            MonomialOrdering::Weighted(w) => w.first().is_some_and(|&a| a < 0 && w.iter().all(|&b| b == a)),
            _ => false,
        }
    }

    /// Elimination ordering: `drop` variables dominate (degrevlex on each block).
    pub fn elimination(nvars: usize, drop: &[usize]) -> MonomialOrdering {
        let keep: Vec<usize> = (0..nvars).filter(|i| !drop.contains(i)).collect();
        let mut blocks = vec![(drop.to_vec(), MonomialOrdering::DegRevLex)];
        if !keep.is_empty() {
            blocks.push((keep, MonomialOrdering::DegRevLex));
        }
        MonomialOrdering::Block(blocks)
    }
}

impl fmt::Display for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrdering::DegRevLex => f.write_str("degrevlex"),
            MonomialOrdering::Lex => f.write_str("lex"),
            MonomialOrdering::NegDegRevLex => f.write_str("negdegrevlex"),
            MonomialOrdering::Weighted(w) => {
                let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "weighted({})", ws.join(","))
            }
            MonomialOrdering::Block(blocks) => {
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|(idx, ord)| {
                        let is: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                        format!("{}[{}]", ord, is.join(","))
                    })
                    .collect();
                write!(f, "block({})", parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn basic_comparisons() {
        let one = m(&[0, 0]);
        let x = m(&[1, 0]);
        assert_eq!(MonomialOrdering::NegDegRevLex.compare(&one, &x), Ordering::Greater);
        assert_eq!(
            MonomialOrdering::DegRevLex.compare(&m(&[2, 0]), &m(&[1, 1])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrdering::Lex.compare(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn block_dominance() {
        // variables (x, y): y global block first, x local block second
        let ord = MonomialOrdering::Block(vec![
            (vec![1], MonomialOrdering::DegRevLex),
            (vec![0], MonomialOrdering::NegDegRevLex),
        ]);
        ord.validate(2).unwrap();
        assert_eq!(ord.compare(&m(&[0, 1]), &m(&[5, 0])), Ordering::Greater);
        assert!(!ord.is_global(2) && !ord.is_local(2));
    }

    #[test]
    fn validation() {
        assert!(MonomialOrdering::Weighted(vec![1, -1]).validate(2).is_err());
        assert!(MonomialOrdering::Weighted(vec![1]).validate(2).is_err());
        let bad = MonomialOrdering::Block(vec![(vec![0], MonomialOrdering::Lex)]);
        assert!(bad.validate(2).is_err());
        assert!(MonomialOrdering::Weighted(vec![-2, -3]).is_local(2));
    }
}
