use std::cmp::Ordering;
use std::fmt;

/// Vertex index, dense in `[0, n)` for the owning structure.
pub type VertexId = usize;

/// Fixed-capacity set of vertex indices backed by a `u128` bitmask.
///
/// Membership, intersection and union are single word operations; iteration
/// is always in ascending vertex order. Capacity is [`VertexSet::CAPACITY`]
/// vertices, far above anything the exhaustive searches can reach.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// All vertices in `[0, n)`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY);
        if n == Self::CAPACITY {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: VertexId) -> Self {
        assert!(v < Self::CAPACITY);
        VertexSet(1u128 << v)
    }

    pub fn pair(u: VertexId, v: VertexId) -> Self {
        assert!(u != v);
        Self::singleton(u).union(Self::singleton(v))
    }

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, v: VertexId) {
        assert!(v < Self::CAPACITY);
        self.0 |= 1u128 << v;
    }

    pub fn remove(&mut self, v: VertexId) {
        assert!(v < Self::CAPACITY);
        self.0 &= !(1u128 << v);
    }

    pub fn with(self, v: VertexId) -> Self {
        let mut s = self;
        s.insert(v);
        s
    }

    pub fn without(self, v: VertexId) -> Self {
        let mut s = self;
        s.remove(v);
        s
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < Self::CAPACITY && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement within the universe `[0, n)`.
    pub fn complement_in(self, n: usize) -> Self {
        Self::full(n).minus(self)
    }

    pub fn min(self) -> Option<VertexId> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max(self) -> Option<VertexId> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros() as usize)
        }
    }

    /// Ascending iterator over members.
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a VertexId>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

pub struct BitIter(u128);

impl Iterator for BitIter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Lexicographic order on the ascending member lists, the order in which
/// edges are stored and written. `{0,1} < {0,1,2} < {0,2}`.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let m = diff.trailing_zeros();
        if self.0 >> m & 1 == 1 {
            // self owns the least differing element; other is either a proper
            // prefix (then greater side is self) or diverges upward.
            if other.0 >> m == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 >> m == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "}}")
    }
}

/// Iterate all k-subsets of `universe` (given as an ascending slice) in
/// lexicographic order of their ascending member lists. The order is the
/// enumeration order that witness minimality promises refer to.
pub fn k_subsets(universe: &[VertexId], k: usize) -> KSubsets<'_> {
    KSubsets {
        universe,
        idx: (0..k).collect(),
        done: k > universe.len(),
        first: true,
    }
}

pub struct KSubsets<'a> {
    universe: &'a [VertexId],
    idx: Vec<usize>,
    done: bool,
    first: bool,
}

impl<'a> Iterator for KSubsets<'a> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
        } else {
            let k = self.idx.len();
            let n = self.universe.len();
            // advance the odometer
            let mut i = k;
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                if self.idx[i] < n - (k - i) {
                    self.idx[i] += 1;
                    for j in i + 1..k {
                        self.idx[j] = self.idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        Some(self.idx.iter().map(|&i| self.universe[i]).collect())
    }
}
