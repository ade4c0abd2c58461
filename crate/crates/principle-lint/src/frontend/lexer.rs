//! Tokenizer for the supported Java-like surface syntax. Comments and
//! whitespace never reach the parser; literals stay single tokens with their
//! escapes intact.

use serde::{Deserialize, Serialize};

use super::FrontendError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenClass {
    Keyword,
    Identifier,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
    Punctuation,
    Operator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub class: TokenClass,
    pub lexeme: String,
    pub line: u32,
    pub column: u32,
}

impl Token {
    pub fn is(&self, lexeme: &str) -> bool {
        self.lexeme == lexeme
    }

    pub fn is_keyword(&self, word: &str) -> bool {
        self.class == TokenClass::Keyword && self.lexeme == word
    }
}

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while",
];

// Longest first so maximal munch works by scan order.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++",
    "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "+", "-", "*", "/", "%",
    "=", "<", ">", "!", "&", "|", "^", "~", "?", ":",
];

const PUNCTUATION: &[char] = &['{', '}', '(', ')', '[', ']', ';', ',', '.', '@'];

/// Splits source text into tokens, dropping comments and whitespace.
pub fn tokenize(source: &str, file: &str) -> Result<Vec<Token>, FrontendError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut column: u32 = 1;

    let lex_error = |line: u32, message: &str| FrontendError::Lex {
        file: file.to_owned(),
        line,
        message: message.to_owned(),
    };

    while i < chars.len() {
        let c = chars[i];
        let start_line = line;
        let start_column = column;

        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '/' && i + 1 < chars.len() && chars[i + 1] == '/' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '/' && i + 1 < chars.len() && chars[i + 1] == '*' {
            i += 2;
            column += 2;
            let mut closed = false;
            while i < chars.len() {
                if chars[i] == '*' && i + 1 < chars.len() && chars[i + 1] == '/' {
                    i += 2;
                    column += 2;
                    closed = true;
                    break;
                }
                if chars[i] == '\n' {
                    line += 1;
                    column = 1;
                } else {
                    column += 1;
                }
                i += 1;
            }
            if !closed {
                return Err(lex_error(start_line, "unterminated block comment"));
            }
            continue;
        }
        if c == '"' || c == '\'' {
            let quote = c;
            let mut lexeme = String::new();
            i += 1;
            column += 1;
            let mut closed = false;
            while i < chars.len() {
                let ch = chars[i];
                if ch == '\n' {
                    break;
                }
                if ch == '\\' {
                    if i + 1 >= chars.len() {
                        break;
                    }
                    lexeme.push(ch);
                    lexeme.push(chars[i + 1]);
                    i += 2;
                    column += 2;
                    continue;
                }
                if ch == quote {
                    i += 1;
                    column += 1;
                    closed = true;
                    break;
                }
                lexeme.push(ch);
                i += 1;
                column += 1;
            }
            if !closed {
                let what = if quote == '"' { "string" } else { "char" };
                return Err(lex_error(start_line, &format!("unterminated {what} literal")));
            }
            tokens.push(Token {
                class: if quote == '"' { TokenClass::StringLiteral } else { TokenClass::CharLiteral },
                lexeme,
                line: start_line,
                column: start_column,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut lexeme = String::new();
            let mut saw_dot = false;
            while i < chars.len() {
                let ch = chars[i];
                let take = ch.is_ascii_alphanumeric()
                    || ch == '_'
                    || (ch == '.' && !saw_dot && chars.get(i + 1).is_some_and(char::is_ascii_digit));
                if !take {
                    break;
                }
                if ch == '.' {
                    saw_dot = true;
                }
                lexeme.push(ch);
                i += 1;
                column += 1;
            }
            tokens.push(Token {
                class: TokenClass::NumberLiteral,
                lexeme,
                line: start_line,
                column: start_column,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' || c == '$' {
            let mut lexeme = String::new();
            while i < chars.len() {
                let ch = chars[i];
                if !(ch.is_alphanumeric() || ch == '_' || ch == '$') {
                    break;
                }
                lexeme.push(ch);
                i += 1;
                column += 1;
            }
            let class = if KEYWORDS.contains(&lexeme.as_str()) {
                TokenClass::Keyword
            } else {
                TokenClass::Identifier
            };
            tokens.push(Token { class, lexeme, line: start_line, column: start_column });
            continue;
        }
        if c == '.' && chars.get(i + 1) == Some(&'.') && chars.get(i + 2) == Some(&'.') {
            tokens.push(Token {
                class: TokenClass::Operator,
                lexeme: "...".to_owned(),
                line: start_line,
                column: start_column,
            });
            i += 3;
            column += 3;
            continue;
        }
        if PUNCTUATION.contains(&c) {
            tokens.push(Token {
                class: TokenClass::Punctuation,
                lexeme: c.to_string(),
                line: start_line,
                column: start_column,
            });
            i += 1;
            column += 1;
            continue;
        }
        let mut matched = false;
        for op in OPERATORS {
            let op_chars: Vec<char> = op.chars().collect();
            if chars[i..].starts_with(&op_chars) {
                tokens.push(Token {
                    class: TokenClass::Operator,
                    lexeme: (*op).to_owned(),
                    line: start_line,
                    column: start_column,
                });
                i += op_chars.len();
                column += op_chars.len() as u32;
                matched = true;
                break;
            }
        }
        if !matched {
            return Err(lex_error(start_line, &format!("unexpected character {c:?}")));
        }
    }

    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex(source: &str) -> Vec<Token> {
        tokenize(source, "test.java").unwrap()
    }

    #[test]
    fn class_declaration_tokens() {
        let tokens = lex("class A {}");
        let lexemes: Vec<&str> = tokens.iter().map(|t| t.lexeme.as_str()).collect();
        assert_eq!(lexemes, vec!["class", "A", "{", "}"]);
        assert_eq!(tokens[0].class, TokenClass::Keyword);
        assert_eq!(tokens[1].class, TokenClass::Identifier);
    }

    #[test]
    fn comments_are_dropped_and_lines_tracked() {
        let tokens = lex("// c\nint x;");
        assert_eq!(tokens.len(), 3);
        assert_eq!(tokens[0].lexeme, "int");
        assert!(tokens.iter().all(|t| t.line == 2));
    }

    #[test]
    fn string_escapes_stay_in_one_token() {
        let tokens = lex("s = \"a\\\"b\";");
        let string = tokens.iter().find(|t| t.class == TokenClass::StringLiteral).unwrap();
        assert_eq!(string.lexeme, "a\\\"b");
        assert_eq!(tokens.len(), 4);
    }

    #[test]
    fn unterminated_literal_reports_line() {
        let err = tokenize("int x;\nString s = \"oops", "t.java").unwrap_err();
        match err {
            FrontendError::Lex { line, .. } => assert_eq!(line, 2),
            other => panic!("expected lex error, got {other:?}"),
        }
    }

    #[test]
    fn unterminated_block_comment_is_an_error() {
        assert!(tokenize("/* never closed", "t.java").is_err());
    }

    #[test]
    fn columns_are_one_based_and_monotonic() {
        let tokens = lex("a bb  ccc");
        assert_eq!(tokens[0].column, 1);
        assert_eq!(tokens[1].column, 3);
        assert_eq!(tokens[2].column, 7);
    }

    #[test]
    fn multi_char_operators_use_maximal_munch() {
        let tokens = lex("a >>= b >> c >= d");
        let ops: Vec<&str> = tokens
            .iter()
            .filter(|t| t.class == TokenClass::Operator)
            .map(|t| t.lexeme.as_str())
            .collect();
        assert_eq!(ops, vec![">>=", ">>", ">="]);
    }
}
