//! Embedded JSON Schemas for the file formats the CLI reads and writes.

pub const INSTANCE: &str = r##"{
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "instance",
  "description": "A numerical matching instance: k triples of nonnegative integers and a target B with sum(r)+sum(b)+sum(g) = k*B. Values may exceed 64 bits.",
  "type": "object",
  "required": ["k", "B", "r", "b", "g"],
  "additionalProperties": false,
  "properties": {
    "k": { "type": "integer", "minimum": 1 },
    "B": { "type": "integer", "minimum": 0 },
    "r": { "type": "array", "items": { "type": "integer", "minimum": 0 } },
    "b": { "type": "array", "items": { "type": "integer", "minimum": 0 } },
    "g": { "type": "array", "items": { "type": "integer", "minimum": 0 } }
  }
}
"##;

pub const SOLUTION: &str = r##"{
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "solution",
  "description": "A matching: pi[i] is the 0-based red index and pi_prime[i] the 0-based green index assigned to blue index i.",
  "type": "object",
  "required": ["pi", "pi_prime"],
  "additionalProperties": false,
  "properties": {
    "pi": { "type": "array", "items": { "type": "integer", "minimum": 0 } },
    "pi_prime": { "type": "array", "items": { "type": "integer", "minimum": 0 } }
  }
}
"##;

pub const TREE: &str = r##"{
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "tree",
  "description": "A rooted tree on vertices 0..n-1. parent[v] is the parent id, -1 for the root. roles, when present, labels each vertex (e.g. \"Spinal:3\", \"WallChild:0\", \"RedLeaf:1\", \"Plain\").",
  "type": "object",
  "required": ["n", "root", "parent"],
  "additionalProperties": false,
  "properties": {
    "n": { "type": "integer", "minimum": 1 },
    "root": { "type": "integer", "minimum": 0 },
    "parent": { "type": "array", "items": { "type": "integer", "minimum": -1 } },
    "roles": { "type": "array", "items": { "type": "string" } }
  }
}
"##;

pub const DRAWING: &str = r##"{
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "drawing",
  "description": "A grid drawing on [1,W] x [1,H]. pos[v] is the [x, y] point of vertex v; bends maps an edge's child vertex id to the bend points from the parent side. No bends means straight-line.",
  "type": "object",
  "required": ["W", "H", "pos"],
  "additionalProperties": false,
  "properties": {
    "W": { "type": "integer", "minimum": 1 },
    "H": { "type": "integer", "minimum": 1 },
    "pos": {
      "type": "array",
      "items": {
        "type": "array",
        "items": { "type": "integer" },
        "minItems": 2,
        "maxItems": 2
      }
    },
    "bends": {
      "type": "object",
      "additionalProperties": {
        "type": "array",
        "items": {
          "type": "array",
          "items": { "type": "integer" },
          "minItems": 2,
          "maxItems": 2
        }
      }
    }
  }
}
"##;

pub const STRENGTHEN: &str = r##"{
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "strengthen",
  "description": "Record of an instance-strengthening step: the exponent base c, the parity pad mu, and both instances.",
  "type": "object",
  "required": ["c", "mu", "original", "strengthened"],
  "additionalProperties": false,
  "properties": {
    "c": { "type": "integer", "minimum": 2 },
    "mu": { "type": "integer", "minimum": 0, "maximum": 1 },
    "original": { "$ref": "#/definitions/instance" },
    "strengthened": { "$ref": "#/definitions/instance" }
  },
  "definitions": {
    "instance": {
      "type": "object",
      "required": ["k", "B", "r", "b", "g"],
      "additionalProperties": false,
      "properties": {
        "k": { "type": "integer", "minimum": 1 },
        "B": { "type": "integer", "minimum": 0 },
        "r": { "type": "array", "items": { "type": "integer", "minimum": 0 } },
        "b": { "type": "array", "items": { "type": "integer", "minimum": 0 } },
        "g": { "type": "array", "items": { "type": "integer", "minimum": 0 } }
      }
    }
  }
}
"##;
