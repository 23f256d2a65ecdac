"""Walkthrough: join chains witness that two attributes can be associated.

A join chain bundles one simple path per target attribute from a common
ancestor vertex.  For the bridged example the pair {F, B} lives in
different base relations, yet both bridge relations can associate them,
two path alternatives each: eight chains in total.
"""

from schemacut import build_fdg, fixtures, join_chains

schema, _ = fixtures.example_schema("example1")
fdg = build_fdg(schema)

family = join_chains(fdg, ["F", "B"])
print(f"Join chains for {{F, B}}: {len(family.chains)}")
for i, chain in enumerate(family.chains, start=1):
    edges = ", ".join(
        sorted(f"{''.join(src)}->{''.join(dst)}" for src, dst in chain.edges)
    )
    print(f"  {i}. ancestor {''.join(chain.ancestor):<4} {{{edges}}}")

print("\nEvery chain is minimal: none contains another (antichain).")
print("Cutting one edge per chain makes F and B unjoinable.")

# A second schema where a target can be its own ancestor.
schema2, policy2 = fixtures.example_schema("example2")
fdg2 = build_fdg(schema2)
for targets in policy2.forbidden:
    family2 = join_chains(fdg2, targets)
    print(f"\n{{{', '.join(targets)}}}: {len(family2.chains)} chains, "
          f"ancestors {sorted({''.join(c.ancestor) for c in family2.chains})}")
