//! Sets of residues stored as sorted, disjoint, non-adjacent closed intervals.

use crate::arith::Modulus;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet<S> {
    ranges: Vec<(S, S)>,
}

impl<S: Scalar> IntervalSet<S> {
    pub fn empty() -> Self {
        IntervalSet { ranges: Vec::new() }
    }

    /// `[0, N-1]`
    pub fn full(n: &Modulus<S>) -> Self {
        IntervalSet {
            ranges: vec![(S::zero(), n.max_residue())],
        }
    }

    pub fn single(v: S) -> Self {
        IntervalSet {
            ranges: vec![(v.clone(), v)],
        }
    }

    /// Normalizes arbitrary closed ranges (empty ones with `lo > hi` are dropped).
    pub fn from_ranges(mut ranges: Vec<(S, S)>) -> Self {
        ranges.retain(|(lo, hi)| lo <= hi);
        ranges.sort();
        let mut out: Vec<(S, S)> = Vec::with_capacity(ranges.len());
        for (lo, hi) in ranges {
            if let Some(last) = out.last_mut() {
                if lo <= last.1.clone() + S::one() {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            out.push((lo, hi));
        }
        IntervalSet { ranges: out }
    }

    /// The residues `start, start+1, ..., start+len-1` taken mod N.
    pub fn cyclic(start: &S, len: &S, n: &Modulus<S>) -> Self {
        if !len.is_positive() {
            return Self::empty();
        }
        if len >= n.get() {
            return Self::full(n);
        }
        let start = n.reduce(start);
        let room = n.get().clone() - start.clone(); // values from start to N-1
        if *len <= room {
            let hi = start.clone() + (len.clone() - S::one());
            IntervalSet {
                ranges: vec![(start, hi)],
            }
        } else {
            let wrapped = len.clone() - room - S::one();
            Self::from_ranges(vec![(S::zero(), wrapped), (start, n.max_residue())])
        }
    }

    /// `{v : (v + k) mod N in [lo, hi]}` for residues `lo <= hi`.
    pub fn preimage(lo: &S, hi: &S, k: &S, n: &Modulus<S>) -> Self {
        if lo > hi {
            return Self::empty();
        }
        let len = hi.clone() - lo.clone() + S::one();
        Self::cyclic(&n.sub(lo, k), &len, n)
    }

    pub fn ranges(&self) -> &[(S, S)] {
        &self.ranges
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn len(&self) -> S {
        self.ranges.iter().fold(S::zero(), |acc, (lo, hi)| {
            acc + (hi.clone() - lo.clone() + S::one())
        })
    }

    pub fn is_singleton(&self) -> bool {
        self.ranges.len() == 1 && self.ranges[0].0 == self.ranges[0].1
    }

    pub fn min(&self) -> Option<&S> {
        self.ranges.first().map(|r| &r.0)
    }

    pub fn max(&self) -> Option<&S> {
        self.ranges.last().map(|r| &r.1)
    }

    pub fn contains(&self, v: &S) -> bool {
        self.ranges.iter().any(|(lo, hi)| lo <= v && v <= hi)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.ranges.len() && j < other.ranges.len() {
            let (a0, a1) = &self.ranges[i];
            let (b0, b1) = &other.ranges[j];
            let lo = std::cmp::max(a0, b0);
            let hi = std::cmp::min(a1, b1);
            if lo <= hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { ranges: out }
    }

    /// `{(v + s) mod N : v in self}`
    pub fn shift(&self, s: &S, n: &Modulus<S>) -> Self {
        let s = n.reduce(s);
        if s.is_zero() {
            return self.clone();
        }
        let mut parts = Vec::with_capacity(self.ranges.len() + 1);
        for (lo, hi) in &self.ranges {
            let len = hi.clone() - lo.clone() + S::one();
            parts.extend(Self::cyclic(&n.add(lo, &s), &len, n).ranges);
        }
        Self::from_ranges(parts)
    }

    /// Splits into the lower `ceil(len/2)` values and the rest.
    pub fn split(&self) -> (Self, Self) {
        let two = S::lit(2);
        let mut want = (self.len() + S::one()) / two;
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for (lo, hi) in &self.ranges {
            if !want.is_positive() {
                upper.push((lo.clone(), hi.clone()));
                continue;
            }
            let size = hi.clone() - lo.clone() + S::one();
            if size <= want {
                lower.push((lo.clone(), hi.clone()));
                want = want - size;
            } else {
                let cut = lo.clone() + (want.clone() - S::one());
                lower.push((lo.clone(), cut.clone()));
                upper.push((cut + S::one(), hi.clone()));
                want = S::zero();
            }
        }
        (IntervalSet { ranges: lower }, IntervalSet { ranges: upper })
    }

    /// Values in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = S> + '_ {
        self.ranges.iter().flat_map(|(lo, hi)| {
            let mut next = Some(lo.clone());
            std::iter::from_fn(move || {
                let cur = next.take()?;
                if cur < *hi {
                    next = Some(cur.clone() + S::one());
                }
                Some(cur)
            })
        })
    }
}
