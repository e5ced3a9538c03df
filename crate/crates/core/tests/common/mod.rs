#![allow(dead_code)]

use rand::distributions::Distribution;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Dirichlet;

use topic_rank::distance::Points;
use topic_rank::lda::Topic;
use topic_rank::preprocess::TokenizedDocument;

/// Plain double loops over every cross pair, no compensation.
pub struct Naive {
    pub single: f64,
    pub complete: f64,
    pub average: f64,
    pub centroid: f64,
}

fn dist(x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..x.len() {
        s += (x[i] - y[i]) * (x[i] - y[i]);
    }
    s.sqrt()
}

pub fn naive(a: &[Vec<f64>], b: &[Vec<f64>]) -> Naive {
    let mut single = f64::INFINITY;
    let mut complete: f64 = 0.0;
    let mut total = 0.0;
    for x in a {
        for y in b {
            let d = dist(x, y);
            single = single.min(d);
            complete = complete.max(d);
            total += d;
        }
    }
    let mean = |c: &[Vec<f64>]| -> Vec<f64> {
        let mut m = vec![0.0; c[0].len()];
        for p in c {
            for (mi, pi) in m.iter_mut().zip(p) {
                *mi += pi;
            }
        }
        m.iter().map(|v| v / c.len() as f64).collect()
    };
    Naive {
        single,
        complete,
        average: total / (a.len() * b.len()) as f64,
        centroid: dist(&mean(a), &mean(b)),
    }
}

pub fn random_cluster(rng: &mut impl Rng, n: usize, dims: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dims).map(|_| rng.gen_range(-10.0..=10.0)).collect())
        .collect()
}

/// Cluster pair with 1 to 20 points per side and 1 to 10 dimensions.
pub fn random_pair(rng: &mut impl Rng) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let dims = rng.gen_range(1..=10);
    let n1 = rng.gen_range(1..=20);
    let n2 = rng.gen_range(1..=20);
    (random_cluster(rng, n1, dims), random_cluster(rng, n2, dims))
}

pub fn points(rows: &[Vec<f64>]) -> Points {
    Points::from_rows(rows[0].len(), rows).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Corpus drawn from disjoint planted topics whose word weights fall off
/// as 1/(rank + 1), with Dirichlet document mixtures.
pub struct SyntheticLda {
    pub docs: Vec<TokenizedDocument>,
    /// Words of each planted topic, heaviest first.
    pub topics: Vec<Vec<String>>,
}

pub fn synthetic_lda(
    seed: u64,
    n_topics: usize,
    words_per_topic: usize,
    n_docs: usize,
    tokens_per_doc: usize,
) -> SyntheticLda {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let topics: Vec<Vec<String>> = (0..n_topics)
        .map(|t| {
            (0..words_per_topic)
                .map(|w| format!("t{t}w{w:02}"))
                .collect()
        })
        .collect();
    let weights: Vec<f64> = (0..words_per_topic).map(|r| 1.0 / (r + 1) as f64).collect();
    let word_dist = rand::distributions::WeightedIndex::new(&weights).unwrap();
    let mixture = Dirichlet::new_with_size(0.5, n_topics).unwrap();
    let docs = (0..n_docs)
        .map(|d| {
            let theta = mixture.sample(&mut rng);
            let topic_dist = rand::distributions::WeightedIndex::new(&theta).unwrap();
            let tokens = (0..tokens_per_doc)
                .map(|_| {
                    let t = topic_dist.sample(&mut rng);
                    topics[t][word_dist.sample(&mut rng)].clone()
                })
                .collect();
            TokenizedDocument {
                id: format!("d{d}"),
                tokens,
            }
        })
        .collect();
    SyntheticLda { docs, topics }
}

/// Best one-to-one matching of fitted to planted topics; returns the
/// overlap of each matched pair (planted top-k against fitted words).
pub fn best_matching(fitted: &[Topic], planted: &[Vec<String>]) -> Vec<usize> {
    let k = fitted[0].words.len();
    let n = planted.len();
    let overlap = |f: &Topic, p: &[String]| f.words.iter().filter(|w| p[..k].contains(w)).count();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let scores: Vec<usize> = p
            .iter()
            .enumerate()
            .map(|(i, &j)| overlap(&fitted[j], &planted[i]))
            .collect();
        let total: usize = scores.iter().sum();
        if best.as_ref().is_none_or(|(b, _)| total > *b) {
            best = Some((total, scores));
        }
    });
    best.unwrap().1
}

fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}
