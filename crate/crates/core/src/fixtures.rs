//! Named graphs used by the examples, the CLI and the test suites.
//!
//! Names: `banana:n`, `cycle:n`, `wheel:n`, `K4`, `bubble`, `phi3-bubble`,
//! `triangle`, `sunset`, `double-bubble`, `chain-bubble`, `chain3`,
//! `two-loop`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{make_banana, make_cycle, make_wheel, Graph, Theory};

/// One-loop φ⁴ vertex correction: two parallel edges, two legs at each end.
pub fn phi4_bubble() -> Graph {
    Graph::new(2, vec![(0, 1), (0, 1)], vec![0, 0, 1, 1]).expect("valid")
}

/// φ⁴ two-loop vertex graph with a bubble inserted at a vertex of another
/// bubble; its only subdivergence is the inner bubble.
pub fn double_bubble() -> Graph {
    Graph::new(3, vec![(0, 1), (0, 2), (1, 2), (1, 2)], vec![0, 0, 1, 2]).expect("valid")
}

/// Two φ⁴ bubbles in series.
pub fn chain_bubble() -> Graph {
    Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2)], vec![0, 0, 2, 2]).expect("valid")
}

/// Three φ⁴ bubbles in series.
pub fn chain3() -> Graph {
    Graph::new(
        4,
        vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3)],
        vec![0, 0, 3, 3],
    )
    .expect("valid")
}

/// φ⁴ two-point sunset: three parallel edges.
pub fn sunset() -> Graph {
    Graph::new(2, vec![(0, 1); 3], vec![0, 1]).expect("valid")
}

/// φ³ one-loop self-energy.
pub fn phi3_bubble() -> Graph {
    Graph::new(2, vec![(0, 1), (0, 1)], vec![0, 1]).expect("valid")
}

/// φ³ one-loop vertex.
pub fn triangle() -> Graph {
    Graph::new(3, vec![(0, 1), (1, 2), (2, 0)], vec![0, 1, 2]).expect("valid")
}

/// φ³ two-loop self-energy with internal momenta k, k, k−p, k+ℓ, ℓ: the
/// propagator k appears twice (edges 0 and 2) around the bubble formed by
/// edges 3 and 4.
pub fn two_loop() -> Graph {
    Graph::new(
        4,
        vec![(0, 1), (2, 3), (3, 0), (1, 2), (2, 1)],
        vec![0, 3],
    )
    .expect("valid")
}

/// φ³ with two-valent mass-insertion vertices, so that self-energy
/// subgraphs have legal quotients.
pub fn phi3_with_insertions() -> Theory {
    Theory::phi3().with_mass_insertions(true)
}

/// Resolve a graph name or DSL shortcut.
pub fn by_name(name: &str) -> Result<Graph> {
    if let Some((kind, n)) = name.split_once(':') {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size in graph name {name:?}")))?;
        return match kind.trim() {
            "banana" => make_banana(n),
            "cycle" => make_cycle(n),
            "wheel" => make_wheel(n),
            _ => Err(Error::Parse(format!("unknown graph family {kind:?}"))),
        };
    }
    Ok(match name {
        "K4" | "k4" => make_wheel(3)?,
        "bubble" => phi4_bubble(),
        "phi3-bubble" => phi3_bubble(),
        "triangle" => triangle(),
        "sunset" => sunset(),
        "double-bubble" | "eye" => double_bubble(),
        "chain-bubble" => chain_bubble(),
        "chain3" => chain3(),
        "two-loop" => two_loop(),
        _ => return Err(Error::Parse(format!("unknown graph {name:?}"))),
    })
}

/// Theory a named graph naturally belongs to, if any.
pub fn theory_of(name: &str) -> Option<Theory> {
    match name {
        "bubble" | "sunset" | "double-bubble" | "eye" | "chain-bubble" | "chain3" => Some(Theory::phi4()),
        "phi3-bubble" | "triangle" | "two-loop" => Some(phi3_with_insertions()),
        _ => None,
    }
}

/// The default corpus, in a stable order.
pub fn corpus_names() -> Vec<String> {
    let mut names: Vec<String> = (2..=6).map(|n| format!("banana:{n}")).collect();
    names.extend((3..=6).map(|n| format!("cycle:{n}")));
    names.push("K4".into());
    names.push("wheel:4".into());
    for s in [
        "bubble",
        "sunset",
        "double-bubble",
        "chain-bubble",
        "chain3",
        "phi3-bubble",
        "triangle",
        "two-loop",
    ] {
        names.push(s.into());
    }
    names
}

pub fn corpus() -> Vec<(String, Graph)> {
    corpus_names()
        .into_iter()
        .map(|n| {
            let g = by_name(&n).expect("corpus names resolve");
            (n, g)
        })
        .collect()
}

/// Corpus graphs that are Hopf generators of `th`.
pub fn hopf_corpus(th: &Theory) -> Vec<(String, Graph)> {
    corpus()
        .into_iter()
        .filter(|(_, g)| g.validate(th).is_ok() && g.is_1pi().unwrap_or(false) && g.loop_number() > 0)
        .collect()
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// A published closed form.
    Reference,
    /// Computed by hand or by an independent oracle.
    Derived,
    /// Immediate from a definition.
    Definition,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub graph: &'static str,
    pub quantity: &'static str,
    pub value: &'static str,
    pub origin: Origin,
}

/// Pinned values the test suites check against.
pub fn expected_values() -> Vec<Expected> {
    use Origin::*;
    let e = |graph, quantity, value, origin| Expected {
        graph,
        quantity,
        value,
        origin,
    };
    vec![
        e("banana:2", "psi", "t1 + t2", Reference),
        e("banana:3", "psi", "t1*t2 + t1*t3 + t2*t3", Reference),
        e("banana:2", "class", "1", Derived),
        e("banana:3", "class", "L+1", Derived),
        e("banana:2", "automorphisms", "4", Definition),
        e("K4", "automorphisms", "24", Definition),
        e("banana:4", "b1", "3", Definition),
        e("K4", "three_edge_connected", "true", Derived),
        e("double-bubble", "subdivergences", "1", Derived),
        e("chain-bubble", "subdivergences", "2", Derived),
        e("two-loop", "edges", "5", Reference),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_form, GraphFile};

    #[test]
    fn corpus_resolves_and_round_trips() {
        let c = corpus();
        assert!(c.len() >= 10);
        for (name, g) in &c {
            assert!(g.edge_count() <= 12, "{name}");
            let back = GraphFile::parse(&GraphFile::from_graph(g, None).to_json()).unwrap().graph().unwrap();
            assert_eq!(canonical_form(g).unwrap(), canonical_form(&back).unwrap(), "{name}");
        }
        assert!(by_name("banana:x").is_err());
        assert!(by_name("nope").is_err());
    }

    #[test]
    fn theories_match() {
        for (name, g) in corpus() {
            if let Some(th) = theory_of(&name) {
                g.validate(&th).unwrap();
                assert!(g.is_1pi().unwrap(), "{name}");
            }
        }
        assert_eq!(hopf_corpus(&Theory::phi4()).len(), 6);
    }
}
