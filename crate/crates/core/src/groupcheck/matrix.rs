use std::fmt;

/// Element of `F_3[a]/(a^k)`, coefficients low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Truncated {
    coeffs: Vec<u8>,
}

impl Truncated {
    pub fn new(k: usize, coeffs: &[u8]) -> Self {
        let mut c = vec![0; k];
        for (i, &x) in coeffs.iter().take(k).enumerate() {
            c[i] = x % 3;
        }
        Self { coeffs: c }
    }

    pub fn zero(k: usize) -> Self {
        Self::new(k, &[])
    }

    pub fn one(k: usize) -> Self {
        Self::new(k, &[1])
    }

    /// The indeterminate `a`.
    pub fn a(k: usize) -> Self {
        Self::new(k, &[0, 1])
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// All `3^k` elements in lexicographic order of coefficients.
    pub fn all(k: usize) -> Vec<Self> {
        (0..3usize.pow(k as u32))
            .map(|mut code| {
                let c: Vec<u8> = (0..k)
                    .map(|_| {
                        let d = (code % 3) as u8;
                        code /= 3;
                        d
                    })
                    .collect();
                Self { coeffs: c }
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| (x + y) % 3).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| (3 - x) % 3).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = self.k();
        let mut c = vec![0u8; k];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate().take(k - i) {
                c[i + j] = (c[i + j] + x * y) % 3;
            }
        }
        Self { coeffs: c }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.k()), |acc, _| acc.mul(self))
    }

    /// Image in `F_3[a]/(a^j)` for `j ≤ k`.
    pub fn truncate(&self, j: usize) -> Self {
        Self::new(j, &self.coeffs)
    }
}

impl fmt::Display for Truncated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".into(),
                (1, c) => format!("{c}a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// 2×2 matrix over `F_3[a]/(a^k)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedPolyMatrix {
    pub entries: [Truncated; 4],
}

impl TruncatedPolyMatrix {
    pub fn new(e: [Truncated; 4]) -> Self {
        assert!(e.iter().all(|x| x.k() == e[0].k()), "entries must share k");
        Self { entries: e }
    }

    pub fn identity(k: usize) -> Self {
        Self::new([Truncated::one(k), Truncated::zero(k), Truncated::zero(k), Truncated::one(k)])
    }

    pub fn zero(k: usize) -> Self {
        Self::new([Truncated::zero(k), Truncated::zero(k), Truncated::zero(k), Truncated::zero(k)])
    }

    /// `(1 v; 0 1)`.
    pub fn upper(v: &Truncated) -> Self {
        let k = v.k();
        Self::new([Truncated::one(k), v.clone(), Truncated::zero(k), Truncated::one(k)])
    }

    /// `(1 0; 1 1)`.
    pub fn lower_one(k: usize) -> Self {
        Self::new([Truncated::one(k), Truncated::zero(k), Truncated::one(k), Truncated::one(k)])
    }

    pub fn k(&self) -> usize {
        self.entries[0].k()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        Self::new([
            a.mul(e).add(&b.mul(g)),
            a.mul(f).add(&b.mul(h)),
            c.mul(e).add(&d.mul(g)),
            c.mul(f).add(&d.mul(h)),
        ])
    }

    pub fn add(&self, o: &Self) -> Self {
        let e: Vec<Truncated> = self.entries.iter().zip(&o.entries).map(|(x, y)| x.add(y)).collect();
        Self::new(e.try_into().expect("four entries"))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let e: Vec<Truncated> = self.entries.iter().zip(&o.entries).map(|(x, y)| x.sub(y)).collect();
        Self::new(e.try_into().expect("four entries"))
    }

    pub fn det(&self) -> Truncated {
        let [a, b, c, d] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    /// Adjugate; equals the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Self {
        let [a, b, c, d] = &self.entries;
        Self::new([d.clone(), b.neg(), c.neg(), a.clone()])
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.k()), |acc, _| acc.mul(self))
    }
}
