//! Versioned prompt templates and their rendering.

use serde::{Deserialize, Serialize};

use crate::gateway::GatewayError;
use crate::strategy::Strategy;
use tseoh_core::dsl::{grammar_doc, vocabulary_doc};

pub const TEMPLATE_VERSION: &str = "v1";

pub const OBJECTIVES: &str = "maximizing resource utilization and minimizing task running time";

const SYSTEM: &str = include_str!("../templates/v1/system.txt");
const INIT: &str = include_str!("../templates/v1/init.txt");
const M1: &str = include_str!("../templates/v1/m1.txt");
const M2: &str = include_str!("../templates/v1/m2.txt");
const E1: &str = include_str!("../templates/v1/e1.txt");
const E2: &str = include_str!("../templates/v1/e2.txt");
const CODE: &str = include_str!("../templates/v1/code.txt");
const CODE_PARENT: &str = include_str!("../templates/v1/code_parent.txt");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: String,
    pub content: String,
}

impl Message {
    pub fn system(content: impl Into<String>) -> Self {
        Self { role: "system".into(), content: content.into() }
    }

    pub fn user(content: impl Into<String>) -> Self {
        Self { role: "user".into(), content: content.into() }
    }
}

/// The heuristic a non-INIT prompt builds on.
#[derive(Clone, Copy, Debug)]
pub struct Parent<'a> {
    pub id: usize,
    pub description: &'a str,
    pub source: &'a str,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub strategy: Strategy,
    pub parent_id: Option<usize>,
    pub messages: Vec<Message>,
}

impl PromptBundle {
    pub fn user_turn(&self) -> &str {
        self.messages.iter().rev().find(|m| m.role == "user").map_or("", |m| &m.content)
    }
}

/// Single-pass `{{name}}` substitution. Inserted values are never rescanned,
/// so a parent description containing braces cannot inject placeholders.
fn fill(template: &str, vars: &[(&str, &str)]) -> Result<String, GatewayError> {
    let mut out = String::with_capacity(template.len() + 256);
    let mut rest = template;
    while let Some(i) = rest.find("{{") {
        out.push_str(&rest[..i]);
        let tail = &rest[i + 2..];
        let j = tail
            .find("}}")
            .ok_or_else(|| GatewayError::Template("unclosed placeholder".into()))?;
        let key = tail[..j].trim();
        let value = vars
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| GatewayError::Template(format!("no value for placeholder `{key}`")))?;
        out.push_str(value);
        rest = &tail[j + 2..];
    }
    out.push_str(rest);
    Ok(out)
}

fn system_message() -> Result<Message, GatewayError> {
    Ok(Message::system(fill(SYSTEM, &[("objectives", OBJECTIVES)])?))
}

/// Step 1 prompt: asks for a heuristic description.
pub fn render_prompt(strategy: Strategy, parent: Option<Parent<'_>>) -> Result<PromptBundle, GatewayError> {
    let template = match strategy {
        Strategy::Init => INIT,
        Strategy::M1 => M1,
        Strategy::M2 => M2,
        Strategy::E1 => E1,
        Strategy::E2 => E2,
    };
    let parent = match (strategy.needs_parent(), parent) {
        (true, None) => return Err(GatewayError::MissingParent(strategy)),
        (false, _) => None,
        (true, p) => p,
    };
    let vocabulary = vocabulary_doc();
    let grammar = grammar_doc();
    let (pd, ps) = parent.map_or(("", ""), |p| (p.description, p.source));
    let user = fill(
        template,
        &[
            ("vocabulary", &vocabulary),
            ("grammar", &grammar),
            ("objectives", OBJECTIVES),
            ("parent_description", pd),
            ("parent_source", ps),
        ],
    )?;
    Ok(PromptBundle {
        strategy,
        parent_id: parent.map(|p| p.id),
        messages: vec![system_message()?, Message::user(user)],
    })
}

/// Step 2: folds the step 1 description into the code-generation prompt.
pub fn render_code_prompt(
    strategy: Strategy,
    description: &str,
    parent: Option<Parent<'_>>,
) -> Result<PromptBundle, GatewayError> {
    let parent = parent.filter(|_| strategy.needs_parent());
    let parent_context = match parent {
        Some(p) => fill(CODE_PARENT, &[("parent_source", p.source)])?,
        None => String::new(),
    };
    let vocabulary = vocabulary_doc();
    let grammar = grammar_doc();
    let user = fill(
        CODE,
        &[
            ("description", description),
            ("parent_context", &parent_context),
            ("vocabulary", &vocabulary),
            ("grammar", &grammar),
        ],
    )?;
    Ok(PromptBundle {
        strategy,
        parent_id: parent.map(|p| p.id),
        messages: vec![system_message()?, Message::user(user)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tseoh_core::dsl::Var;

    const P: Parent<'static> = Parent {
        id: 7,
        description: "Favour tasks that have waited {{long}}.",
        source: "wait / (exec + 1)",
    };

    #[test]
    fn init_has_vocabulary_and_no_parent() {
        let b = render_prompt(Strategy::Init, None).unwrap();
        for v in Var::ALL {
            assert!(b.user_turn().contains(v.name()), "{}", v.name());
        }
        assert!(!b.user_turn().contains("existing heuristic"));
        assert_eq!(b.parent_id, None);
        assert_eq!(b.messages[0].role, "system");
        assert!(b.messages[0].content.contains(OBJECTIVES));
    }

    #[test]
    fn m2_preserves_core_idea() {
        let b = render_prompt(Strategy::M2, Some(P)).unwrap();
        let u = b.user_turn();
        let header = u.find("Core idea to preserve:").unwrap();
        assert!(u[header..].contains(P.description));
        assert_eq!(b.parent_id, Some(7));
    }

    #[test]
    fn e2_tunes_parameters_of_verbatim_source() {
        let u = render_prompt(Strategy::E2, Some(P)).unwrap().user_turn().to_string();
        assert!(u.contains("Only adjust its parameters"));
        assert!(u.contains("reallocate the weights"));
        assert!(u.contains(&format!("```score\n{}\n```", P.source)));
    }

    #[test]
    fn every_parent_strategy_embeds_exactly_one_parent() {
        for s in Strategy::OFFSPRING {
            let u = render_prompt(s, Some(P)).unwrap().user_turn().to_string();
            assert_eq!(u.matches(P.source).count(), 1, "{s}");
            assert!(render_prompt(s, None).is_err());
        }
    }

    #[test]
    fn braces_in_values_are_not_expanded() {
        let u = render_prompt(Strategy::M1, Some(P)).unwrap().user_turn().to_string();
        assert!(u.contains("{{long}}"));
    }

    #[test]
    fn code_prompt_folds_description() {
        let b = render_code_prompt(Strategy::E1, "Prefer idle servers.", Some(P)).unwrap();
        let u = b.user_turn();
        assert!(u.contains("<description>\nPrefer idle servers.\n</description>"));
        assert!(u.contains(P.source));
        let b = render_code_prompt(Strategy::Init, "x", None).unwrap();
        assert!(!b.user_turn().contains("derived from"));
    }
}
