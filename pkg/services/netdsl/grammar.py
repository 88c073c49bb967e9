"""Lark grammars for the network and transition-system DSLs.

Both languages are line oriented; every grammar parses a single statement
and the parser feeds it one non-empty line at a time.
"""

EXPRESSION_GRAMMAR = r"""
    ?expr: iff

    ?iff: implies ("<->" implies)*
    ?implies: or_ ("->" implies)?
    ?or_: xor ("|" xor)*
    ?xor: and_ ("^" and_)*
    ?and_: unary ("&" unary)*

    ?unary: "!" unary          -> not_
          | atom

    ?atom: NAME                -> var
         | "true"              -> true
         | "false"             -> false
         | "const" "[" INT "]" -> const
         | "table" "[" int_list "]" "(" expr ("," expr)* ")" -> table
         | "(" expr ")"

    int_list: INT ("," INT)*

    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.INT
    %import common.WS_INLINE
    %ignore WS_INLINE
"""

NETWORK_GRAMMAR = r"""
    ?start: net_decl
          | controls_decl
          | update
          | output_decl
          | block_decl
          | expr_only

    net_decl: "net" NAME KSPEC
    controls_decl: "controls" NAME*
    update: NAME "<-" expr
    output_decl: "output" NAME "=" expr
    block_decl: "block" NAME "=" "{" name_list "}" block_outputs?
    block_outputs: "outputs" "{" name_list? "}"
    expr_only: "expr" expr

    name_list: NAME ("," NAME)*

    KSPEC: /k=\d+/
""" + EXPRESSION_GRAMMAR

TRANSITION_GRAMMAR = r"""
    ?start: states_decl
          | inputs_decl
          | obs_decl
          | trans_decl
          | label_decl
          | name_decl

    name_decl: "ts" NAME
    states_decl: "states" NAME+
    inputs_decl: "inputs" NAME+
    obs_decl: "obs" NAME+
    trans_decl: "trans" NAME NAME? "->" "{" name_list? "}"
    label_decl: "label" NAME "=" NAME

    name_list: NAME ("," NAME)*

    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.WS_INLINE
    %ignore WS_INLINE
"""

KEYWORDS = frozenset(
    {"net", "controls", "output", "outputs", "block", "expr", "true", "false", "const", "table"}
)
