//! Reply format shared by every provider:
//!
//! ````text
//! <description>
//! one to three sentences
//! </description>
//!
//! ```score
//! expression
//! ```
//! ````

const OPEN: &str = "<description>";
const CLOSE: &str = "</description>";
const FENCE: &str = "```";

/// Text between the first `<description>` and the following
/// `</description>`, trimmed. `None` if absent or empty.
pub fn extract_description(text: &str) -> Option<String> {
    let start = text.find(OPEN)? + OPEN.len();
    let len = text[start..].find(CLOSE)?;
    let d = text[start..start + len].trim();
    (!d.is_empty()).then(|| d.to_string())
}

/// Body of the first fenced code block (any info string), trimmed.
pub fn extract_code(text: &str) -> Option<String> {
    let open = text.find(FENCE)?;
    let after = &text[open + FENCE.len()..];
    // the info string runs to the end of the opening line
    let body_start = after.find('\n')? + 1;
    let body = &after[body_start..];
    let end = body.find(FENCE)?;
    let code = body[..end].trim();
    (!code.is_empty()).then(|| code.to_string())
}

pub fn format_reply(description: &str, source: &str) -> String {
    format!("{OPEN}\n{description}\n{CLOSE}\n\n{FENCE}score\n{source}\n{FENCE}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn extracts_both_parts() {
        let r = "Sure!\n<description>\n Prefer short jobs. \n</description>\nthen\n```score\n-exec\n```\nbye";
        assert_eq!(extract_description(r).unwrap(), "Prefer short jobs.");
        assert_eq!(extract_code(r).unwrap(), "-exec");
    }

    #[test]
    fn missing_parts() {
        assert_eq!(extract_code("<description>x</description> no code"), None);
        assert_eq!(extract_description("```\ncpu\n```"), None);
        assert_eq!(extract_description("<description>  </description>"), None);
        assert_eq!(extract_code("```score\n\n```"), None);
    }

    #[test]
    fn first_block_wins() {
        assert_eq!(extract_code("```\ncpu\n```\n```\nmem\n```").unwrap(), "cpu");
    }

    proptest! {
        #[test]
        fn format_then_extract_is_identity(
            d in "[A-Za-z0-9 ,.()+*/-]{0,80}",
            s in "[a-z0-9_ ()+*/,.-]{0,60}",
        ) {
            let (d, s) = (d.trim(), s.trim());
            prop_assume!(!d.is_empty() && !s.is_empty());
            let reply = format_reply(d, s);
            let (ed, es) = (extract_description(&reply), extract_code(&reply));
            prop_assert_eq!(ed.as_deref(), Some(d));
            prop_assert_eq!(es.as_deref(), Some(s));
        }
    }
}
