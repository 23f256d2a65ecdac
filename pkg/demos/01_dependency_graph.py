"""Walkthrough: building the functional dependency graph of a schema.

Two mirrored four-attribute relations are bridged by two link relations;
every attribute, dependency source and relation becomes a vertex, and the
dependencies plus projections become edges.
"""

from schemacut import build_fdg, export_dot, fixtures, transitive_closure_pairs

schema, policy = fixtures.example_schema("example1")

print("Relations:")
for rel in schema.relations:
    print(f"  {rel.name} = {{{', '.join(rel.attributes)}}} key {{{', '.join(rel.primary_key)}}}")
print("Dependencies:", ", ".join(str(d) for d in schema.fds))

fdg = build_fdg(schema)
print(f"\nGraph: {len(fdg.vertices)} vertices, {len(fdg.edges)} edges")
for vertex in fdg.vertices:
    out = [e for e in fdg.edges if e.src == vertex.attrs]
    targets = ", ".join("".join(e.dst) for e in out)
    print(f"  {vertex.label:<5} ({vertex.kind:<16}) -> {targets or '-'}")

pairs = transitive_closure_pairs(fdg)
print(f"\nReachable ordered pairs: {len(pairs)}")
print("AE reaches B:", (("A", "E"), ("B",)) in pairs)
print("ABCD reaches E:", (("A", "B", "C", "D"), ("E",)) in pairs)

print("\nDOT output:\n")
print(export_dot(fdg))
