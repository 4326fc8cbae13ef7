//! Breadth-first closure of finite groups given by generators.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Something that can be closed into a finite group.
pub trait GroupElement: Clone {
    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> Result<Self>;

    /// Identity of the group `self` belongs to.
    fn identity_like(&self) -> Self;

    /// Real vector determining the element's action; two elements are equal
    /// when their signatures agree within the closure tolerance.
    fn signature(&self) -> Vec<f64>;
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A finite group closed from its generators.
///
/// Element `0` is the identity. Element `i` equals the product of the
/// generators listed in `word(i)`, leftmost applied last.
#[derive(Debug, Clone)]
pub struct GroupSpec<E> {
    generators: Vec<E>,
    elements: Vec<E>,
    signatures: Vec<Vec<f64>>,
    words: Vec<Vec<usize>>,
    /// `(s, j)` such that element `i` was first reached as `generator_s ∘ element_j`.
    parents: Vec<Option<(usize, usize)>>,
    /// `left[s][j]` is the index of `generator_s ∘ element_j`.
    left: Vec<Vec<usize>>,
    tol: f64,
}

/// Closes `generators` under composition.
///
/// Fails with [`Error::ClosureCap`] once more than `max_size` distinct
/// elements appear.
pub fn group_closure<E: GroupElement>(generators: Vec<E>, max_size: usize, tol: f64) -> Result<GroupSpec<E>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Invalid("a group needs at least one generator".into()))?;
    let id = first.identity_like();
    let mut group = GroupSpec {
        signatures: vec![id.signature()],
        elements: vec![id],
        words: vec![Vec::new()],
        parents: vec![None],
        left: vec![Vec::new(); generators.len()],
        generators,
        tol,
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(j) = queue.pop_front() {
        for s in 0..group.generators.len() {
            let prod = group.generators[s].compose(&group.elements[j])?;
            let sig = prod.signature();
            let idx = match group.find_signature(&sig) {
                Some(i) => i,
                None => {
                    if group.elements.len() >= max_size {
                        return Err(Error::ClosureCap { cap: max_size });
                    }
                    let mut word = vec![s];
                    word.extend_from_slice(&group.words[j]);
                    group.elements.push(prod);
                    group.signatures.push(sig);
                    group.words.push(word);
                    group.parents.push(Some((s, j)));
                    queue.push_back(group.elements.len() - 1);
                    group.elements.len() - 1
                }
            };
            let row = &mut group.left[s];
            if row.len() <= j {
                row.resize(j + 1, usize::MAX);
            }
            row[j] = idx;
        }
    }
    Ok(group)
}

impl<E: GroupElement> GroupSpec<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn identity(&self) -> &E {
        &self.elements[0]
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// `"e"` for the identity, otherwise e.g. `"g0·g1·g1"`.
    pub fn label(&self, i: usize) -> String {
        if self.words[i].is_empty() {
            "e".to_string()
        } else {
            self.words[i]
                .iter()
                .map(|s| format!("g{s}"))
                .collect::<Vec<_>>()
                .join("·")
        }
    }

    /// The edge through which element `i` was discovered (`None` for the identity).
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parents[i]
    }

    /// Index of `generator_s ∘ element_j`.
    pub fn left_multiply(&self, s: usize, j: usize) -> usize {
        self.left[s][j]
    }

    fn find_signature(&self, sig: &[f64]) -> Option<usize> {
        self.signatures
            .iter()
            .position(|t| max_abs_diff(t, sig) <= self.tol)
    }

    /// Index of the element acting like `e`, if any.
    pub fn find(&self, e: &E) -> Option<usize> {
        self.find_signature(&e.signature())
    }

    /// `table[i][j]` is the index of `element_i ∘ element_j`.
    pub fn multiplication_table(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.elements[i].compose(&self.elements[j])?;
                table[i][j] = self.find(&prod).ok_or_else(|| {
                    Error::Invalid(format!(
                        "element list not closed: {} ∘ {} is missing",
                        self.label(i),
                        self.label(j)
                    ))
                })?;
            }
        }
        Ok(table)
    }

    /// `inverse[i]` is the index of the inverse of element `i`.
    pub fn inverses(&self, table: &[Vec<usize>]) -> Result<Vec<usize>> {
        (0..self.len())
            .map(|i| {
                table[i].iter().position(|&p| p == 0).ok_or_else(|| {
                    Error::Invalid(format!("element {} has no inverse", self.label(i)))
                })
            })
            .collect()
    }

    /// Verifies closure, identity, inverses and associativity on the element list.
    pub fn check_axioms(&self) -> Result<()> {
        let table = self.multiplication_table()?;
        let n = self.len();
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::Invalid(format!("element 0 is not neutral for {}", self.label(i))));
            }
        }
        let inv = self.inverses(&table)?;
        for (i, &j) in inv.iter().enumerate() {
            if table[j][i] != 0 {
                return Err(Error::Invalid(format!("{} has no two-sided inverse", self.label(i))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Permutation of `{0, .., n-1}`, composed as maps: `(a ∘ b)(i) = a(b(i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            if p >= images.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self(images))
    }

    pub fn cycle(n: usize) -> Self {
        Self((0..n).map(|i| (i + 1) % n).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        Self(p)
    }
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Result<Self> {
        if self.0.len() != other.0.len() {
            return Err(Error::Dimension("permutations of different degree".into()));
        }
        Ok(Self(other.0.iter().map(|&i| self.0[i]).collect()))
    }

    fn identity_like(&self) -> Self {
        Self((0..self.0.len()).collect())
    }

    fn signature(&self) -> Vec<f64> {
        self.0.iter().map(|&i| i as f64).collect()
    }
}
