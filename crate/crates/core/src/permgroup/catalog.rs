//! Named permutation groups, including one representative of every
//! isomorphism class of order at most 24.

use super::{direct_product, regular_representation, FiniteGroup, GroupError, PermGroup, Permutation};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub group: PermGroup,
}

pub fn cyclic(n: usize) -> PermGroup {
    let images = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let gen = Permutation::from_images(images).expect("rotation");
    PermGroup::generate(n, &[gen]).expect("cyclic group")
}

/// Dihedral group of order `2n` acting on an `n`-gon, `n >= 3`.
pub fn dihedral(n: usize) -> PermGroup {
    let m = n as u32;
    let rotation = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect()).expect("rotation");
    let reflection = Permutation::from_images((0..m).map(|i| (m - i) % m).collect()).expect("reflection");
    PermGroup::generate(n, &[rotation, reflection]).expect("dihedral group")
}

pub fn symmetric(n: usize) -> Result<PermGroup, GroupError> {
    if n < 2 {
        return Ok(PermGroup::trivial(n));
    }
    let cycle = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())?;
    let mut swap: Vec<u32> = (0..n as u32).collect();
    swap.swap(0, 1);
    PermGroup::generate(n, &[cycle, Permutation::from_images(swap)?])
}

pub fn alternating(n: usize) -> Result<PermGroup, GroupError> {
    if n < 3 {
        return Ok(PermGroup::trivial(n));
    }
    let gens = (2..n)
        .map(|k| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            images[0] = 1;
            images[1] = k as u32;
            images[k] = 0;
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::generate(n, &gens)
}

/// `A ⋊ C_k` with `A = Z_{moduli[0]} x Z_{moduli[1]} x ...` and the
/// generator of `C_k` acting by `action`, in its regular representation.
fn abelian_by_cyclic<F>(moduli: &[u32], k: u32, action: F) -> PermGroup
where
    F: Fn(&[u32]) -> Vec<u32>,
{
    let vectors: Vec<Vec<u32>> = moduli.iter().fold(vec![Vec::new()], |acc, &m| {
        acc.into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    });
    let size = vectors.len();
    let index_of = |v: &[u32]| v.iter().zip(moduli).fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize);
    // powers[b][v] is the index of action^b(v).
    let mut powers = vec![(0..size).collect::<Vec<usize>>()];
    for _ in 1..k {
        let last = powers.last().expect("identity power");
        let next = last
            .iter()
            .map(|&i| {
                let image: Vec<u32> = action(&vectors[i]).iter().zip(moduli).map(|(x, m)| x % m).collect();
                index_of(&image)
            })
            .collect();
        powers.push(next);
    }
    let n = size * k as usize;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (b1, v1) = (x / size, x % size);
        for y in 0..n {
            let (b2, v2) = (y / size, y % size);
            let moved = &vectors[powers[b1][v2]];
            let sum: Vec<u32> = vectors[v1].iter().zip(moved).zip(moduli).map(|((a, b), m)| (a + b) % m).collect();
            table.push((((b1 + b2) % k as usize) * size + index_of(&sum)) as u32);
        }
    }
    let group = FiniteGroup::from_table(n, table).expect("semidirect product table");
    regular_representation(&group).expect("regular representation")
}

/// `C_m ⋊ C_k` with the generator of `C_k` acting as multiplication by `r`.
fn metacyclic(m: u32, k: u32, r: u32) -> PermGroup {
    abelian_by_cyclic(&[m], k, |v| vec![v[0] * r])
}

/// Dicyclic group of order `4n`: `<a, b | a^(2n), b^2 = a^n, b a b^-1 = a^-1>`.
pub fn dicyclic(n: usize) -> PermGroup {
    let m = 2 * n;
    // Element a^i b^e has label e * m + i.
    let split = |x: usize| (x % m, x / m);
    let size = 2 * m;
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (i1, e1) = split(x);
        for y in 0..size {
            let (i2, e2) = split(y);
            let (i, e) = match (e1, e2) {
                (0, _) => ((i1 + i2) % m, e2),
                (_, 0) => ((i1 + m - i2) % m, 1),
                _ => ((i1 + m - i2 + n) % m, 0),
            };
            table.push((e * m + i) as u32);
        }
    }
    let group = FiniteGroup::from_table(size, table).expect("dicyclic table");
    regular_representation(&group).expect("regular representation")
}

/// `SL(2, 3)` acting on the eight non-zero vectors of `F_3^2`.
pub fn special_linear_2_3() -> PermGroup {
    let vectors: Vec<[u32; 2]> = (0..9).filter(|&k| k != 0).map(|k| [k / 3, k % 3]).collect();
    let act = |m: [[u32; 2]; 2]| {
        let images = vectors
            .iter()
            .map(|v| {
                let w = [(m[0][0] * v[0] + m[0][1] * v[1]) % 3, (m[1][0] * v[0] + m[1][1] * v[1]) % 3];
                vectors.iter().position(|u| *u == w).expect("non-zero image") as u32
            })
            .collect();
        Permutation::from_images(images).expect("invertible matrix")
    };
    let gens = [act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])];
    PermGroup::generate(8, &gens).expect("SL(2,3)")
}

fn times(a: &PermGroup, b: &PermGroup) -> PermGroup {
    direct_product(a, b).expect("direct product")
}

fn abelian(factors: &[usize]) -> PermGroup {
    factors[1..]
        .iter()
        .fold(cyclic(factors[0]), |acc, &n| times(&acc, &cyclic(n)))
}

/// `C_3 ⋊ D_4` where the kernel of the action is a Klein four-group.
fn c3_by_d4() -> PermGroup {
    PermGroup::from_cycles(7, &["(0 1 2 3)(5 6)", "(1 3)", "(4 5 6)"]).expect("C3:D4")
}

/// One group of each isomorphism type of order at most 24, ordered by
/// order.
pub fn small_groups() -> Vec<CatalogEntry> {
    let s3 = || symmetric(3).expect("S3");
    let d4 = || dihedral(4);
    let q8 = || dicyclic(2);
    let a4 = || alternating(4).expect("A4");
    let entry = |name, group| CatalogEntry { name, group };
    vec![
        entry("C1", PermGroup::trivial(1)),
        entry("C2", cyclic(2)),
        entry("C3", cyclic(3)),
        entry("C4", cyclic(4)),
        entry("C2xC2", abelian(&[2, 2])),
        entry("C5", cyclic(5)),
        entry("C6", cyclic(6)),
        entry("S3", s3()),
        entry("C7", cyclic(7)),
        entry("C8", cyclic(8)),
        entry("C4xC2", abelian(&[4, 2])),
        entry("C2xC2xC2", abelian(&[2, 2, 2])),
        entry("D4", d4()),
        entry("Q8", q8()),
        entry("C9", cyclic(9)),
        entry("C3xC3", abelian(&[3, 3])),
        entry("C10", cyclic(10)),
        entry("D5", dihedral(5)),
        entry("C11", cyclic(11)),
        entry("C12", cyclic(12)),
        entry("C6xC2", abelian(&[6, 2])),
        entry("A4", a4()),
        entry("D6", dihedral(6)),
        entry("Dic3", dicyclic(3)),
        entry("C13", cyclic(13)),
        entry("C14", cyclic(14)),
        entry("D7", dihedral(7)),
        entry("C15", cyclic(15)),
        entry("C16", cyclic(16)),
        entry("C4xC4", abelian(&[4, 4])),
        entry("C8xC2", abelian(&[8, 2])),
        entry("C4xC2xC2", abelian(&[4, 2, 2])),
        entry("C2xC2xC2xC2", abelian(&[2, 2, 2, 2])),
        entry("(C4xC2):C2", abelian_by_cyclic(&[4, 2], 2, |v| vec![v[0], v[0] + v[1]])),
        entry("C4:C4", metacyclic(4, 4, 3)),
        entry("M16", metacyclic(8, 2, 5)),
        entry("D8", dihedral(8)),
        entry("SD16", metacyclic(8, 2, 3)),
        entry("Q16", dicyclic(4)),
        entry("C2xD4", times(&cyclic(2), &d4())),
        entry("C2xQ8", times(&cyclic(2), &q8())),
        entry("C4oD4", abelian_by_cyclic(&[4, 2], 2, |v| vec![v[0] + 2 * v[1], v[1]])),
        entry("C17", cyclic(17)),
        entry("C18", cyclic(18)),
        entry("C6xC3", abelian(&[6, 3])),
        entry("D9", dihedral(9)),
        entry("C3xS3", times(&cyclic(3), &s3())),
        entry("(C3xC3):C2", abelian_by_cyclic(&[3, 3], 2, |v| vec![2 * v[0], 2 * v[1]])),
        entry("C19", cyclic(19)),
        entry("C20", cyclic(20)),
        entry("C10xC2", abelian(&[10, 2])),
        entry("D10", dihedral(10)),
        entry("Dic5", metacyclic(5, 4, 4)),
        entry("F20", metacyclic(5, 4, 2)),
        entry("C21", cyclic(21)),
        entry("C7:C3", metacyclic(7, 3, 2)),
        entry("C22", cyclic(22)),
        entry("D11", dihedral(11)),
        entry("C23", cyclic(23)),
        entry("C24", cyclic(24)),
        entry("C12xC2", abelian(&[12, 2])),
        entry("C6xC2xC2", abelian(&[6, 2, 2])),
        entry("S4", symmetric(4).expect("S4")),
        entry("SL(2,3)", special_linear_2_3()),
        entry("C2xA4", times(&cyclic(2), &a4())),
        entry("D12", dihedral(12)),
        entry("Dic6", dicyclic(6)),
        entry("C3:C8", metacyclic(3, 8, 2)),
        entry("C4xS3", times(&cyclic(4), &s3())),
        entry("C2xDic3", times(&cyclic(2), &dicyclic(3))),
        entry("C3:D4", c3_by_d4()),
        entry("C3xD4", times(&cyclic(3), &d4())),
        entry("C3xQ8", times(&cyclic(3), &q8())),
        entry("C2xC2xS3", times(&abelian(&[2, 2]), &s3())),
    ]
}
