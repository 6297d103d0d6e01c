/// Disjoint sets with union by size and an undo trail.
///
/// No path compression: `find` never mutates, so rolling back to a
/// checkpoint restores the exact earlier state.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    trail: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            trail: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (self.find(a), self.find(b));
        if x == y {
            return false;
        }
        if self.size[x] < self.size[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.parent[y] = x;
        self.size[x] += self.size[y];
        self.trail.push(y);
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.trail.len()
    }

    pub fn rollback(&mut self, checkpoint: usize) {
        while self.trail.len() > checkpoint {
            let y = self.trail.pop().expect("trail longer than checkpoint");
            let x = self.parent[y];
            self.size[x] -= self.size[y];
            self.parent[y] = y;
        }
    }

    /// Component index per element, dense and ordered by smallest member.
    pub fn labels(&self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut root_label = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for v in 0..n {
            let r = self.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels[v] = root_label[r];
        }
        (labels, next)
    }
}
