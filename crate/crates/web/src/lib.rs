//! Browser bindings for the sentree demo page.
//!
//! Each export takes plain strings and numbers and returns a JSON document
//! that the page draws. The `*_json` functions hold the logic and are callable
//! from native code.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sentree::decay::DEFAULT_BASE;
use sentree::seq::deserialize_prefix;
use sentree::{
    assign_depths, build_frequency_table, build_tree, check_spectrum_laws, decay_curve,
    layer_spectra, linearize, serialize, DepthedSentence, SenTree, Sentence, Token, TreeSequence,
};

fn tree_json(tree: &SenTree) -> Value {
    let levels = tree.levels();
    let nodes: Vec<Value> = tree
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            json!({
                "token": n.token.as_str(),
                "depth": n.depth,
                "level": levels[i],
                "left": n.left,
                "right": n.right,
            })
        })
        .collect();
    json!({ "root": tree.root(), "height": tree.height(), "nodes": nodes })
}

fn parse_depths(text: &str) -> Result<Vec<f64>, String> {
    text.split_whitespace()
        .map(|d| d.parse::<f64>().map_err(|_| format!("not a number: {d:?}")))
        .collect()
}

/// Tokens from `text`, depths from `depths` if given, otherwise from token
/// frequencies over `corpus` lines plus the sentence itself.
pub fn encode_json(text: &str, depths: &str, corpus: &str) -> Result<String, String> {
    let sentence = Sentence::from_whitespace(text).map_err(|v| v.to_string())?;
    let (depthed, source) = if depths.trim().is_empty() {
        let mut lines = vec![sentence.clone()];
        for line in corpus.lines() {
            lines.push(Sentence::from_whitespace(line).map_err(|v| v.to_string())?);
        }
        let table = build_frequency_table(&lines);
        (assign_depths(&sentence, &table), "frequency")
    } else {
        let depths = parse_depths(depths)?;
        let tokens: Vec<Token> = sentence.into_tokens();
        let depthed = DepthedSentence::new(tokens, depths).map_err(|vs| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        })?;
        (depthed, "given")
    };
    let tree = build_tree(&depthed);
    let seq = serialize(&tree);
    let rendered = seq.render().map_err(|e| e.to_string())?;
    let (spectra, laws) = match layer_spectra(&tree) {
        Ok(s) => {
            let laws = check_spectrum_laws(&s);
            (json!(s), json!(laws))
        }
        Err(_) => (json!([]), Value::Null),
    };
    let out = json!({
        "depth_source": source,
        "sequence": rendered,
        "itn": seq.itn_count(),
        "vac": seq.vac_count(),
        "tree": tree_json(&tree),
        "spectra": spectra,
        "laws": laws,
    });
    Ok(out.to_string())
}

/// Decodes a sequence, keeping the prefix that decoded before any error.
pub fn decode_json(sequence: &str) -> Result<String, String> {
    let seq = TreeSequence::parse(sequence);
    let (tree, error) = deserialize_prefix(&seq);
    let error = error.map(|e| {
        json!({
            "position": e.position,
            "reason": e.reason.name(),
            "message": e.to_string(),
        })
    });
    let out = json!({
        "sentence": linearize(&tree).join(),
        "tree": tree_json(&tree),
        "error": error,
    });
    Ok(out.to_string())
}

/// Envelope values for distances `0..=max_dist`.
pub fn decay_json(dim: usize, max_dist: usize, base: f64) -> Result<String, String> {
    let base = if base > 0.0 { base } else { DEFAULT_BASE };
    let curve = decay_curve(dim, max_dist, base).map_err(|e| e.to_string())?;
    Ok(json!(curve).to_string())
}

#[wasm_bindgen]
pub fn encode(text: &str, depths: &str, corpus: &str) -> Result<String, JsError> {
    encode_json(text, depths, corpus).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decode(sequence: &str) -> Result<String, JsError> {
    decode_json(sequence).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decay(dim: usize, max_dist: usize, base: f64) -> Result<String, JsError> {
    decay_json(dim, max_dist, base).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn encode_with_given_depths() {
        let v = parse(&encode_json("the cat sat", "2 1 1.5", "").unwrap());
        assert_eq!(v["sequence"], "<ITN> cat the sat");
        assert_eq!(v["depth_source"], "given");
        assert_eq!(v["tree"]["root"], 1);
        assert_eq!(v["tree"]["nodes"][0]["level"], 1);
        assert_eq!(v["spectra"].as_array().unwrap().len(), 2);
        assert_eq!(v["laws"]["uniform_width"], true);
    }

    #[test]
    fn encode_with_frequencies() {
        let v = parse(&encode_json("the the sat", "", "").unwrap());
        assert_eq!(v["sequence"], "<ITN> sat <ITN> the <VAC> <VAC> the");
        assert_eq!(v["depth_source"], "frequency");
        assert_eq!(v["vac"], 2);
    }

    #[test]
    fn encode_empty_and_bad_input() {
        let v = parse(&encode_json("", "", "").unwrap());
        assert_eq!(v["sequence"], "");
        assert_eq!(v["tree"]["root"], Value::Null);
        assert!(encode_json("a b", "1", "")
            .unwrap_err()
            .contains("2 tokens but 1 depths"));
        assert!(encode_json("a", "x", "").is_err());
        assert!(encode_json("<ITN>", "", "").is_err());
    }

    #[test]
    fn decode_reports_prefix_and_reason() {
        let v = parse(&decode_json("<ITN> cat the sat").unwrap());
        assert_eq!(v["sentence"], "the cat sat");
        assert_eq!(v["error"], Value::Null);

        let v = parse(&decode_json("<ITN> a <VAC>").unwrap());
        assert_eq!(v["sentence"], "a");
        assert_eq!(v["error"]["reason"], "SlotCountMismatch");
    }

    #[test]
    fn decay_values() {
        let v = parse(&decay_json(2, 3, 0.0).unwrap());
        assert_eq!(v["values"].as_array().unwrap().len(), 4);
        assert_eq!(v["base"], DEFAULT_BASE);
        assert!(decay_json(3, 3, 10_000.0).is_err());
    }
}
