//! One representative of every isomorphism class of the supported orders,
//! built from standard presentations.

use super::group::FiniteGroup;
use crate::{Error, Result};

/// Orders the catalog covers.
pub fn supported_orders() -> Vec<usize> {
    let mut v: Vec<usize> = (1..=27).collect();
    v.extend([50, 125]);
    v
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    FiniteGroup::from_table(format!("C{n}"), n, table).expect("cyclic table")
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (a.order(), b.order());
    let size = n * m;
    let mut table = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            table[x * size + y] = a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
        }
    }
    FiniteGroup::from_table(format!("{}×{}", a.label(), b.label()), size, table).expect("product table")
}

pub fn product_of(label: &str, factors: &[FiniteGroup]) -> FiniteGroup {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, g| direct_product(&acc, g))
        .with_label(label)
}

/// `⟨a, b | a^m = 1, b^n = a^t, b a b⁻¹ = a^r⟩`, elements `a^i b^j`.
pub fn metacyclic(label: &str, m: usize, n: usize, r: usize, t: usize) -> Result<FiniteGroup> {
    let powmod = |base: usize, e: usize| (0..e).fold(1 % m, |acc, _| acc * base % m);
    if powmod(r, n) != 1 % m || !(t * (r + m - 1)).is_multiple_of(m) {
        return Err(Error::NotAGroup(format!("{label}: inconsistent metacyclic data")));
    }
    let size = m * n;
    let mut table = vec![0; size * size];
    for x in 0..size {
        let (i, j) = (x / n, x % n);
        for y in 0..size {
            let (k, l) = (y / n, y % n);
            let mut a = (i + k * powmod(r, j)) % m;
            let mut b = j + l;
            if b >= n {
                b -= n;
                a = (a + t) % m;
            }
            table[x * size + y] = a * n + b;
        }
    }
    FiniteGroup::from_table(label, size, table)
}

pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(&format!("D{n}"), n, 2, n - 1, 0).expect("dihedral")
}

pub fn dicyclic(n: usize) -> FiniteGroup {
    metacyclic(&format!("Dic{n}"), 2 * n, 2, 2 * n - 1, n).expect("dicyclic")
}

/// `N ⋊ H` where generator `k` of `H` acts on `N` by the automorphism sending
/// the generators of `N` to `action[k]`.
pub fn semidirect(label: &str, n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
    let bad = |why: &str| Error::NotAGroup(format!("{label}: {why}"));
    if action.len() != h.generators().len() {
        return Err(bad("one automorphism per generator of the acting group"));
    }
    let mut autos = Vec::new();
    for imgs in action {
        let map = n
            .extend(imgs, 0, |a, b| n.mul(*a, *b))
            .ok_or_else(|| bad("generator images do not define an endomorphism"))?;
        let mut sorted = map.clone();
        sorted.sort_unstable();
        if sorted != (0..n.order()).collect::<Vec<_>>() {
            return Err(bad("endomorphism is not bijective"));
        }
        autos.push(map);
    }
    let id: Vec<usize> = (0..n.order()).collect();
    let phi = h
        .extend(&autos, id, |f, g| g.iter().map(|&x| f[x]).collect::<Vec<_>>())
        .ok_or_else(|| bad("action is not a homomorphism"))?;
    let (nn, hn) = (n.order(), h.order());
    let size = nn * hn;
    let mut table = vec![0; size * size];
    for x in 0..size {
        let (n1, h1) = (x / hn, x % hn);
        for y in 0..size {
            let (n2, h2) = (y / hn, y % hn);
            table[x * size + y] = n.mul(n1, phi[h1][n2]) * hn + h.mul(h1, h2);
        }
    }
    FiniteGroup::from_table(label, size, table)
}

/// Closure of permutations of `{0..d}` composed left to right.
pub fn permutation_group(label: &str, degree: usize, gens: &[Vec<u8>]) -> FiniteGroup {
    let id: Vec<u8> = (0..degree as u8).collect();
    FiniteGroup::generate(label, id, gens, |a: &Vec<u8>, b: &Vec<u8>| a.iter().map(|&x| b[x as usize]).collect(), usize::MAX)
        .expect("permutations form a group")
        .expect("no limit")
        .0
}

/// `SL(2, 3)`.
pub fn sl2_f3() -> FiniteGroup {
    type M = [u8; 4];
    let mul = |a: &M, b: &M| {
        [
            (a[0] * b[0] + a[1] * b[2]) % 3,
            (a[0] * b[1] + a[1] * b[3]) % 3,
            (a[2] * b[0] + a[3] * b[2]) % 3,
            (a[2] * b[1] + a[3] * b[3]) % 3,
        ]
    };
    FiniteGroup::generate("SL(2,3)", [1, 0, 0, 1], &[[1, 1, 0, 1], [1, 0, 1, 1]], mul, usize::MAX)
        .expect("matrices form a group")
        .expect("no limit")
        .0
}

fn elementary(p: usize, k: usize) -> FiniteGroup {
    product_of(&format!("C{p}^{k}"), &vec![cyclic(p); k])
}

/// Automorphism images of the two generators of `C_p × C_p` for the matrix
/// `[[a, b], [c, d]]` acting on column vectors.
fn pp_matrix(g: &FiniteGroup, p: usize, m: [usize; 4]) -> Vec<usize> {
    // elements of C_p × C_p are x·p + y; generators are (1,0) and (0,1)
    let gens = g.generators();
    let coords = |e: usize| (e / p, e % p);
    let (g0, g1) = (coords(gens[0]), coords(gens[1]));
    let apply = |(x, y): (usize, usize)| ((m[0] * x + m[1] * y) % p) * p + (m[2] * x + m[3] * y) % p;
    vec![apply(g0), apply(g1)]
}

/// Inversion on an abelian group, as generator images.
fn inversion(g: &FiniteGroup) -> Vec<usize> {
    g.generators().iter().map(|&x| g.inv(x)).collect()
}

/// Heisenberg group of upper unitriangular 3×3 matrices over `F_p`.
pub fn heisenberg(p: usize) -> FiniteGroup {
    let n = elementary(p, 2);
    let h = cyclic(p);
    semidirect(&format!("Heis({p})"), &n, &h, &[pp_matrix(&n, p, [1, 1, 0, 1])]).expect("Heisenberg")
}

fn by_power(g: &FiniteGroup, k: usize) -> Vec<usize> {
    g.generators().iter().map(|&x| g.pow(x, k as u64)).collect()
}

/// Every group of order `n`, one per isomorphism class.
pub fn catalog(n: usize) -> Result<Vec<FiniteGroup>> {
    let c = cyclic;
    let p = |label: &str, fs: &[FiniteGroup]| product_of(label, fs);
    let groups = match n {
        1 | 2 | 3 | 5 | 7 | 11 | 13 | 17 | 19 | 23 => vec![c(n)],
        4 | 9 | 25 => {
            let q = (n as f64).sqrt().round() as usize;
            vec![c(n), p(&format!("C{q}×C{q}"), &[c(q), c(q)])]
        }
        6 => vec![c(6), dihedral(3).with_label("S3")],
        10 | 14 | 22 | 26 => vec![c(n), dihedral(n / 2)],
        8 => vec![
            c(8),
            p("C4×C2", &[c(4), c(2)]),
            elementary(2, 3),
            dihedral(4),
            dicyclic(2).with_label("Q8"),
        ],
        12 => vec![
            c(12),
            p("C6×C2", &[c(6), c(2)]),
            a4(),
            dihedral(6),
            dicyclic(3),
        ],
        15 => vec![c(15)],
        16 => order16()?,
        18 => {
            let c33 = p("C3×C3", &[c(3), c(3)]);
            vec![
                c(18),
                p("C6×C3", &[c(6), c(3)]),
                dihedral(9),
                p("S3×C3", &[dihedral(3), c(3)]),
                semidirect("(C3×C3)⋊C2", &c33, &c(2), &[inversion(&c33)])?,
            ]
        }
        20 => vec![
            c(20),
            p("C10×C2", &[c(10), c(2)]),
            dihedral(10),
            dicyclic(5),
            metacyclic("F20", 5, 4, 2, 0)?,
        ],
        21 => vec![c(21), metacyclic("C7⋊C3", 7, 3, 2, 0)?],
        24 => order24()?,
        27 => vec![
            c(27),
            p("C9×C3", &[c(9), c(3)]),
            elementary(3, 3),
            heisenberg(3),
            metacyclic("C9⋊C3", 9, 3, 4, 0)?,
        ],
        50 => {
            let c55 = p("C5×C5", &[c(5), c(5)]);
            vec![
                c(50),
                p("C10×C5", &[c(10), c(5)]),
                dihedral(25),
                semidirect("(C5×C5)⋊C2", &c55, &c(2), &[inversion(&c55)])?,
                p("D5×C5", &[dihedral(5), c(5)]),
            ]
        }
        125 => vec![
            c(125),
            p("C25×C5", &[c(25), c(5)]),
            elementary(5, 3),
            heisenberg(5),
            metacyclic("C25⋊C5", 25, 5, 6, 0)?,
        ],
        _ => return Err(Error::UnsupportedOrder(n)),
    };
    Ok(groups)
}

pub fn a4() -> FiniteGroup {
    let v = elementary(2, 2);
    // a 3-cycle permuting the three involutions
    semidirect("A4", &v, &cyclic(3), &[pp_matrix(&v, 2, [0, 1, 1, 1])]).expect("A4")
}

pub fn s4() -> FiniteGroup {
    permutation_group("S4", 4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]])
}

fn order16() -> Result<Vec<FiniteGroup>> {
    let c = cyclic;
    let c2 = elementary(2, 2);
    let c42 = product_of("C4×C2", &[c(4), c(2)]);
    // Pauli group: C4×C2 = ⟨iI⟩×⟨Z⟩ (element x·2 + y), and X conjugates Z to −Z
    let pauli_action: Vec<usize> = c42
        .generators()
        .iter()
        .map(|&g| {
            let (x, y) = (g / 2, g % 2);
            ((x + 2 * y) % 4) * 2 + y
        })
        .collect();
    Ok(vec![
        c(16),
        product_of("C4×C4", &[c(4), c(4)]),
        semidirect("C2²⋊C4", &c2, &c(4), &[pp_matrix(&c2, 2, [0, 1, 1, 0])])?,
        metacyclic("C4⋊C4", 4, 4, 3, 0)?,
        product_of("C8×C2", &[c(8), c(2)]),
        metacyclic("M16", 8, 2, 5, 0)?,
        dihedral(8),
        metacyclic("SD16", 8, 2, 3, 0)?,
        dicyclic(4).with_label("Q16"),
        product_of("C4×C2×C2", &[c(4), c(2), c(2)]),
        product_of("D4×C2", &[dihedral(4), c(2)]),
        product_of("Q8×C2", &[dicyclic(2), c(2)]),
        semidirect("C4∘D4", &c42, &c(2), &[pauli_action])?,
        elementary(2, 4),
    ])
}

fn order24() -> Result<Vec<FiniteGroup>> {
    let c = cyclic;
    let d4 = dihedral(4);
    // D4 acts on C3 through D4 → C2 with kernel ⟨r², s⟩: r inverts, s fixes
    let c3 = c(3);
    let d4_action: Vec<Vec<usize>> = d4
        .generators()
        .iter()
        .map(|&g| if d4.element_order(g) == 4 { inversion(&c3) } else { by_power(&c3, 1) })
        .collect();
    Ok(vec![
        metacyclic("C3⋊C8", 3, 8, 2, 0)?,
        c(24),
        sl2_f3(),
        dicyclic(6),
        product_of("C4×S3", &[c(4), dihedral(3)]),
        dihedral(12),
        product_of("C2×Dic3", &[c(2), dicyclic(3)]),
        semidirect("C3⋊D4", &c3, &d4, &d4_action)?,
        product_of("C12×C2", &[c(12), c(2)]),
        product_of("C3×D4", &[c(3), dihedral(4)]),
        product_of("C3×Q8", &[c(3), dicyclic(2)]),
        s4(),
        product_of("C2×A4", &[c(2), a4()]),
        product_of("C2×C2×S3", &[c(2), c(2), dihedral(3)]),
        product_of("C6×C2×C2", &[c(6), c(2), c(2)]),
    ])
}
