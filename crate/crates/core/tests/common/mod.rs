//! Random root data with Shimura cocharacters, plus closed-form oracles for
//! `d`, `dim V_μ` and `|W|`.

#![allow(dead_code)]

use cgroupkit::matrix::IntMatrix;
use cgroupkit::root_datum::{RootDatum, WeightVector};
use cgroupkit::shimura::{normalize_mu, ShimuraData};
use proptest::prelude::*;

#[derive(Clone, Debug)]
pub enum Block {
    /// `GL_n` with `μ` taking the value `c − 1` on `k` coordinates and `c`
    /// elsewhere, in the given order.
    Gl { mu: Vec<i64> },
    /// `GSp₄` with `μ = (−1, −1, −1) + shift · (1, 1, 2)`.
    Gsp4 { shift: i64 },
    /// A one-dimensional torus factor.
    Torus { mu: i64 },
}

impl Block {
    pub fn rank(&self) -> usize {
        match self {
            Block::Gl { mu } => mu.len(),
            Block::Gsp4 { .. } => 3,
            Block::Torus { .. } => 1,
        }
    }

    fn roots(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<usize>) {
        match self {
            Block::Gl { mu } => {
                let n = mu.len();
                let e = |i: usize, j: usize| {
                    let mut v = vec![0; n];
                    v[i] += 1;
                    v[j] -= 1;
                    v
                };
                let mut roots = Vec::new();
                let mut simple = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            if j == i + 1 {
                                simple.push(roots.len());
                            }
                            roots.push(e(i, j));
                        }
                    }
                }
                (roots.clone(), roots, simple)
            }
            Block::Gsp4 { .. } => {
                let pos = [
                    (vec![1, -1, 0], vec![1, -1, 0]),
                    (vec![0, 2, -1], vec![0, 1, 0]),
                    (vec![1, 1, -1], vec![1, 1, 0]),
                    (vec![2, 0, -1], vec![1, 0, 0]),
                ];
                let mut roots: Vec<Vec<i64>> = pos.iter().map(|p| p.0.clone()).collect();
                let mut coroots: Vec<Vec<i64>> = pos.iter().map(|p| p.1.clone()).collect();
                roots.extend(
                    pos.iter()
                        .map(|p| p.0.iter().map(|x| -x).collect::<Vec<_>>()),
                );
                coroots.extend(
                    pos.iter()
                        .map(|p| p.1.iter().map(|x| -x).collect::<Vec<_>>()),
                );
                (roots, coroots, vec![0, 1])
            }
            Block::Torus { .. } => (vec![], vec![], vec![]),
        }
    }

    fn mu(&self) -> Vec<i64> {
        match self {
            Block::Gl { mu } => mu.clone(),
            Block::Gsp4 { shift } => vec![shift - 1, shift - 1, 2 * shift - 1],
            Block::Torus { mu } => vec![*mu],
        }
    }

    pub fn expected_d(&self) -> usize {
        match self {
            Block::Gl { mu } => {
                let low = mu.iter().min().copied().unwrap_or(0);
                let k = mu.iter().filter(|&&x| x == low).count();
                if k == mu.len() {
                    0
                } else {
                    k * (mu.len() - k)
                }
            }
            Block::Gsp4 { .. } => 3,
            Block::Torus { .. } => 0,
        }
    }

    pub fn expected_dim(&self) -> u64 {
        match self {
            Block::Gl { mu } => {
                let low = mu.iter().min().copied().unwrap_or(0);
                let k = mu.iter().filter(|&&x| x == low).count() as u64;
                binomial(mu.len() as u64, k)
            }
            Block::Gsp4 { .. } => 4,
            Block::Torus { .. } => 1,
        }
    }

    pub fn weyl_order(&self) -> usize {
        match self {
            Block::Gl { mu } => (1..=mu.len()).product(),
            Block::Gsp4 { .. } => 8,
            Block::Torus { .. } => 1,
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug)]
pub struct RandomShimura {
    pub blocks: Vec<Block>,
    /// Change of basis on the cocharacter side; also the pairing matrix.
    pub basis_change: IntMatrix,
}

impl RandomShimura {
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Block::rank).sum()
    }

    pub fn expected_d(&self) -> usize {
        self.blocks.iter().map(Block::expected_d).sum()
    }

    pub fn expected_dim(&self) -> u64 {
        self.blocks.iter().map(Block::expected_dim).product()
    }

    pub fn weyl_order(&self) -> usize {
        self.blocks.iter().map(Block::weyl_order).product()
    }

    /// The datum with pairing `P`: characters keep their coordinates and
    /// cocharacters are rewritten as `P⁻¹ y`, so all pairings are unchanged.
    pub fn datum_and_mu(&self) -> (RootDatum, Vec<i64>) {
        let n = self.rank();
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut simple = Vec::new();
        let mut mu = Vec::new();
        let mut offset = 0;
        for b in &self.blocks {
            let (r, c, s) = b.roots();
            let pad = |v: &Vec<i64>| {
                let mut out = vec![0; n];
                out[offset..offset + v.len()].copy_from_slice(v);
                out
            };
            simple.extend(s.iter().map(|i| i + roots.len()));
            roots.extend(r.iter().map(pad));
            coroots.extend(c.iter().map(pad));
            mu.extend(b.mu());
            offset += b.rank();
        }
        let p = &self.basis_change;
        let p_inv = p.unimodular_inverse().expect("unimodular");
        let coroots = coroots.iter().map(|y| p_inv.apply(y)).collect();
        let datum = RootDatum::new("random", n, roots, coroots, simple).with_pairing(p.clone());
        (datum, p_inv.apply(&mu))
    }

    pub fn shimura(&self) -> ShimuraData {
        let (datum, mu) = self.datum_and_mu();
        normalize_mu(&datum, &WeightVector::cocharacter(mu))
            .expect("generated data satisfy the axiom")
    }
}

fn block() -> impl Strategy<Value = Block> {
    prop_oneof![
        3 => (1usize..=4, -2i64..=2)
            .prop_flat_map(|(n, c)| prop::collection::vec(prop::bool::ANY, n)
                .prop_map(move |low| Block::Gl { mu: low.iter().map(|&l| if l { c - 1 } else { c }).collect() })),
        1 => (-2i64..=2).prop_map(|shift| Block::Gsp4 { shift }),
        1 => (-4i64..=4).prop_map(|mu| Block::Torus { mu }),
    ]
}

pub fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (a, b, k) in ops {
            if a != b {
                u.add_row_multiple(a, b, k);
            }
        }
        u
    })
}

pub fn random_shimura() -> impl Strategy<Value = RandomShimura> {
    prop::collection::vec(block(), 1..=3)
        .prop_filter("rank at most 7", |b| {
            b.iter().map(Block::rank).sum::<usize>() <= 7
        })
        .prop_flat_map(|blocks| {
            let n = blocks.iter().map(Block::rank).sum();
            (Just(blocks), unimodular(n))
        })
        .prop_map(|(blocks, basis_change)| RandomShimura {
            blocks,
            basis_change,
        })
}
