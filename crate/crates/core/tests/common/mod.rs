//! Test-local reference computations, written independently of the library
//! formulas. Modules over a cyclic Nakayama algebra are uniserial and given
//! by their composition series `i, i+1, ..., i+k-1` (top first).

#![allow(dead_code)]

/// Cyclic Kupisch series `c_0, ..., c_{n-1}`.
#[derive(Clone, Debug)]
pub struct Cyclic {
    pub c: Vec<usize>,
}

/// `(top vertex, length)`.
pub type Uni = (usize, usize);

impl Cyclic {
    pub fn new(c: &[usize]) -> Self {
        Cyclic { c: c.to_vec() }
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn modules(&self) -> Vec<Uni> {
        (0..self.n())
            .flat_map(|i| (1..=self.c[i]).map(move |k| (i, k)))
            .collect()
    }

    pub fn is_projective(&self, m: Uni) -> bool {
        m.1 == self.c[m.0]
    }

    /// Kernel of the projective cover `P_i -> M(i,k)`: the bottom `c_i - k`
    /// composition factors of `P_i`.
    pub fn omega(&self, m: Uni) -> Option<Uni> {
        let (i, k) = m;
        (k < self.c[i]).then(|| ((i + k) % self.n(), self.c[i] - k))
    }

    /// A map `X -> Y` between uniserials is determined by the image of the
    /// top of `X`, which must be a quotient of `X` sitting inside `Y`. The
    /// image is the submodule of `Y` starting at factor `t`; it has length
    /// `l - t` and top vertex `j + t`.
    pub fn hom(&self, x: Uni, y: Uni) -> usize {
        let n = self.n();
        (0..y.1)
            .filter(|&t| (y.0 + t) % n == x.0 && y.1 - t <= x.1)
            .count()
    }

    /// From `0 -> Hom(M,N) -> Hom(P,N) -> Hom(ΩM,N) -> Ext^1(M,N) -> 0`.
    pub fn ext1(&self, m: Uni, n: Uni) -> usize {
        match self.omega(m) {
            None => 0,
            Some(w) => {
                let p = (m.0, self.c[m.0]);
                self.hom(w, n) + self.hom(m, n) - self.hom(p, n)
            }
        }
    }

    /// Dimension shifting along the minimal resolution.
    pub fn ext(&self, t: usize, m: Uni, n: Uni) -> usize {
        assert!(t >= 1);
        let mut x = m;
        for _ in 1..t {
            match self.omega(x) {
                Some(w) => x = w,
                None => return 0,
            }
        }
        self.ext1(x, n)
    }

    /// Whether `Ext^t(X, Y) = 0` for `1 <= t <= k` in both directions.
    pub fn compatible(&self, x: Uni, y: Uni, k: usize) -> bool {
        (1..=k).all(|t| self.ext(t, x, y) == 0 && self.ext(t, y, x) == 0)
    }

    pub fn is_rigid(&self, ms: &[Uni], k: usize) -> bool {
        ms.iter()
            .all(|&x| ms.iter().all(|&y| self.compatible(x, y, k)))
    }

    /// Largest number of pairwise compatible, individually rigid
    /// indecomposables, by exhaustive Bron-Kerbosch with pivoting.
    pub fn max_rigid(&self, k: usize) -> usize {
        let verts: Vec<Uni> = self
            .modules()
            .into_iter()
            .filter(|&m| self.compatible(m, m, k))
            .collect();
        let adj: Vec<Vec<bool>> = verts
            .iter()
            .map(|&x| verts.iter().map(|&y| self.compatible(x, y, k)).collect())
            .collect();
        let mut best = 0;
        bron_kerbosch(&adj, 0, (0..verts.len()).collect(), Vec::new(), &mut best);
        best
    }

    /// `D(A)` summands: injective envelopes of the simples, found as the
    /// longest uniserial with the given socle.
    pub fn injectives(&self) -> Vec<Uni> {
        let n = self.n();
        (0..n)
            .map(|s| {
                self.modules()
                    .into_iter()
                    .filter(|&(i, k)| (i + k - 1) % n == s)
                    .max_by_key(|m| m.1)
                    .expect("every simple has an envelope")
            })
            .collect()
    }
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    size: usize,
    p: Vec<usize>,
    mut x: Vec<usize>,
    best: &mut usize,
) {
    if p.is_empty() {
        if x.is_empty() {
            *best = (*best).max(size);
        }
        return;
    }
    if size + p.len() <= *best {
        return;
    }
    let pivot = *p
        .iter()
        .chain(&x)
        .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
        .expect("p is nonempty");
    let mut p = p;
    // Rigid vertices are self-adjacent, so the pivot itself stays a candidate.
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|&v| v == pivot || !adj[pivot][v])
        .collect();
    for v in candidates {
        let np = p.iter().copied().filter(|&u| u != v && adj[v][u]).collect();
        let nx = x.iter().copied().filter(|&u| adj[v][u]).collect();
        bron_kerbosch(adj, size + 1, np, nx, best);
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// Cyclic Kupisch series of length `n` with entries in `2..=max`, obeying
/// `c_{i+1} >= c_i - 1`, rotations included.
pub fn kupisch_corpus(n: usize, max: usize) -> Vec<Vec<usize>> {
    let lo = 2;
    let mut out = Vec::new();
    let mut cur = vec![lo; n];
    loop {
        if (0..n).all(|i| cur[(i + 1) % n] + 1 >= cur[i]) {
            out.push(cur.clone());
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if cur[pos] < max {
                cur[pos] += 1;
                break;
            }
            cur[pos] = lo;
            pos += 1;
        }
    }
}

/// `dim HH^1(k[x]/(x^n))` over characteristic `p`: derivations are fixed by
/// `D(x) = f` subject to `n x^{n-1} f = 0`, and none are inner.
pub fn hh1_truncated(n: usize, p: u64) -> usize {
    if (n as u64).is_multiple_of(p) {
        n
    } else {
        n - 1
    }
}
