//! Restricted-growth enumeration of unordered set partitions and disjoint
//! set families.
//!
//! A labelling assigns each vertex a block label, or [`UNASSIGNED`] when
//! partial families are allowed. Labels first appear in increasing order
//! (`0`, then `1`, …), so every unordered family is produced exactly once,
//! with blocks ordered by smallest element.

use std::ops::ControlFlow;

pub(crate) const UNASSIGNED: u8 = u8::MAX;

const PREFIX_LEN: usize = 6;

/// Stirling number of the second kind `S(n, k)`, saturating.
pub fn stirling2(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = (j as u128).saturating_mul(row[j]).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

/// Number of unordered families of `k` disjoint nonempty subsets of an
/// `n`-set: `S(n + 1, k + 1)`.
pub fn tuple_count(n: usize, k: usize) -> u128 {
    stirling2(n + 1, k + 1)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Assignments {
    pub n: usize,
    pub k: usize,
    pub allow_unassigned: bool,
}

/// A fixed labelling of the first few vertices; extensions of different
/// prefixes are disjoint and together cover every labelling.
#[derive(Clone, Debug)]
pub(crate) struct Prefix {
    labels: Vec<u8>,
    used: usize,
}

impl Assignments {
    pub fn partitions(n: usize, k: usize) -> Self {
        Assignments {
            n,
            k,
            allow_unassigned: false,
        }
    }

    pub fn tuples(n: usize, k: usize) -> Self {
        Assignments {
            n,
            k,
            allow_unassigned: true,
        }
    }

    /// Choices for the next position, in canonical order.
    fn choices(&self, placed: usize, used: usize) -> impl Iterator<Item = (u8, usize)> {
        let after = self.n - placed - 1;
        let k = self.k;
        let existing = (0..used).map(move |l| (l as u8, used));
        let fresh = (used < k).then_some((used as u8, used + 1));
        let skip = self.allow_unassigned.then_some((UNASSIGNED, used));
        existing
            .chain(fresh)
            .chain(skip)
            .filter(move |&(_, u)| k - u <= after)
    }

    /// All feasible prefixes of length `min(n, PREFIX_LEN)`, in canonical order.
    pub fn prefixes(&self) -> Vec<Prefix> {
        let len = self.n.min(PREFIX_LEN);
        let mut out = Vec::new();
        if self.k == 0 || self.k > self.n || self.k >= UNASSIGNED as usize {
            return out;
        }
        let mut labels = Vec::with_capacity(len);
        self.collect_prefixes(&mut labels, 0, len, &mut out);
        out
    }

    fn collect_prefixes(&self, labels: &mut Vec<u8>, used: usize, len: usize, out: &mut Vec<Prefix>) {
        if labels.len() == len {
            out.push(Prefix {
                labels: labels.clone(),
                used,
            });
            return;
        }
        for (l, u) in self.choices(labels.len(), used) {
            labels.push(l);
            self.collect_prefixes(labels, u, len, out);
            labels.pop();
        }
    }

    /// Visits every completion of `prefix` in canonical order.
    pub fn for_each<F>(&self, prefix: &Prefix, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        let mut labels = Vec::with_capacity(self.n);
        labels.extend_from_slice(&prefix.labels);
        self.extend(&mut labels, prefix.used, &mut f)
    }

    fn extend<F>(&self, labels: &mut Vec<u8>, used: usize, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        if labels.len() == self.n {
            return if used == self.k { f(labels) } else { ControlFlow::Continue(()) };
        }
        for (l, u) in self.choices(labels.len(), used) {
            labels.push(l);
            let flow = self.extend(labels, u, f);
            labels.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}
