#include "derivations.hpp"

#include "toybit/binform.hpp"
#include "toybit/normalform.hpp"
#include "toybit/textio.hpp"

namespace toybit::testing {

namespace {

Waypoint wp(const std::string& text, bool drop = true) { return {parse_text(text), drop}; }

DerivedCase make(std::string name, std::vector<Waypoint> w) {
  DerivedCase c{std::move(name), w.front().d, w.back().d, std::move(w)};
  return c;
}

// Triangle graph state, vertex v on out0.
const char* kTriangle = R"(inputs 0
outputs 3
node v Z 00
node a Z 00
node b Z 00
node h1 H
node h2 H
node h3 H
edge v out0
edge a out1
edge b out2
edge v h1
edge h1 a
edge v h2
edge h2 b
edge a h3
edge h3 b
)";

}  // namespace

std::vector<DerivedCase> derived_cases() {
  std::vector<DerivedCase> out;

  out.push_back(make("zero scalar: G(00) state against G(11) effect is the G(11) scalar",
                     {wp("inputs 0\noutputs 0\nnode s Z 00\nnode e Z 11\nedge s e\n"),
                      wp("inputs 0\noutputs 0\nnode z Z 11\n", false)}));
  out.push_back(make("zero scalar: G(11) scalar equals R(11) scalar",
                     {wp("inputs 0\noutputs 0\nnode z Z 11\n"), wp("inputs 0\noutputs 0\nnode z X 11\n", false)}));

  out.push_back(make("H loop disappears",
                     {wp("inputs 0\noutputs 0\nnode h H\nedge h h\n"),
                      wp("inputs 0\noutputs 0\nnode s X 01\n", false), wp("inputs 0\noutputs 0\n")}));

  out.push_back(make("H then H is a wire", {wp("inputs 1\noutputs 1\nnode h H\nnode k H\nedge in0 h\nedge h k\nedge k out0\n"),
                                            wp("inputs 1\noutputs 1\nedge in0 out0\n")}));

  // R(a abar) state = G(a abar) state, a = 0
  out.push_back(make("red_green_states a=0",
                     {wp("inputs 0\noutputs 1\nnode r X 01\nedge r out0\n"),
                      wp("inputs 0\noutputs 1\nnode g Z 00\nnode m X 01\nnode s Z 01\nedge g m\nedge m s\nedge s out0\n"),
                      wp("inputs 0\noutputs 1\nnode g Z 00\nnode m X 00\nnode t X 01\nnode s Z 01\n"
                         "edge g m\nedge m t\nedge m s\nedge s out0\n"),
                      wp("inputs 0\noutputs 1\nnode s Z 01\nedge s out0\n")}));
  // a = 1
  out.push_back(make("red_green_states a=1",
                     {wp("inputs 0\noutputs 1\nnode r X 10\nedge r out0\n"),
                      wp("inputs 0\noutputs 1\nnode g Z 11\nnode m X 01\nnode s Z 01\nedge g m\nedge m s\nedge s out0\n"),
                      wp("inputs 0\noutputs 1\nnode g Z 00\nnode k Z 11\nnode m X 01\nnode s Z 01\n"
                         "edge g k\nedge k m\nedge m s\nedge s out0\n"),
                      wp("inputs 0\noutputs 1\nnode g Z 00\nnode m X 10\nnode s Z 10\nedge g m\nedge m s\nedge s out0\n"),
                      wp("inputs 0\noutputs 1\nnode g Z 00\nnode m X 00\nnode t X 10\nnode s Z 10\n"
                         "edge g m\nedge m t\nedge m s\nedge s out0\n"),
                      wp("inputs 0\noutputs 1\nnode s Z 10\nedge s out0\n")}));

  // Local complementation of the triangle about v, step by step.
  std::vector<Waypoint> lc;
  lc.push_back(wp(kTriangle));
  // Euler decomposition of the a-b edge, green ends merged into a and b
  lc.push_back(wp(R"(inputs 0
outputs 3
node v Z 00
node a Z 01
node b Z 01
node h1 H
node h2 H
node r X 01
edge v out0
edge a out1
edge b out2
edge v h1
edge h1 a
edge v h2
edge h2 b
edge a r
edge r b
)"));
  // phases pulled apart
  lc.push_back(wp(R"(inputs 0
outputs 3
node v Z 00
node a Z 00
node b Z 00
node sa Z 01
node sb Z 01
node h1 H
node h2 H
node r X 00
node rs X 01
edge v out0
edge a sa
edge sa out1
edge b sb
edge sb out2
edge v h1
edge h1 a
edge v h2
edge h2 b
edge a r
edge r b
edge r rs
)"));
  // H H inserted on the output of v
  lc.push_back(wp(R"(inputs 0
outputs 3
node v Z 00
node x1 H
node x2 H
node a Z 00
node b Z 00
node sa Z 01
node sb Z 01
node h1 H
node h2 H
node r X 00
node rs X 01
edge v x1
edge x1 x2
edge x2 out0
edge a sa
edge sa out1
edge b sb
edge sb out2
edge v h1
edge h1 a
edge v h2
edge h2 b
edge a r
edge r b
edge r rs
)"));
  // colour change at v
  lc.push_back(wp(R"(inputs 0
outputs 3
node v X 00
node x2 H
node a Z 00
node b Z 00
node sa Z 01
node sb Z 01
node r X 00
node rs X 01
edge v x2
edge x2 out0
edge a sa
edge sa out1
edge b sb
edge sb out2
edge v a
edge v b
edge a r
edge r b
edge r rs
)"));
  // bialgebra
  lc.push_back(wp(R"(inputs 0
outputs 3
node R X 00
node G Z 00
node sa Z 01
node sb Z 01
node rs X 01
node hv H
edge R sa
edge sa out1
edge R sb
edge sb out2
edge R G
edge G rs
edge G hv
edge hv out0
)"));
  // R(01) state = G(01) state, in place
  lc.push_back(wp(R"(inputs 0
outputs 3
node R X 00
node G Z 01
node sa Z 01
node sb Z 01
node g Z 00
node m X 01
node hv H
edge R sa
edge sa out1
edge R sb
edge sb out2
edge R G
edge G m
edge m g
edge G hv
edge hv out0
)"));
  lc.push_back(wp(R"(inputs 0
outputs 3
node R X 00
node G Z 01
node sa Z 01
node sb Z 01
node g Z 00
node m X 00
node t X 01
node hv H
edge R sa
edge sa out1
edge R sb
edge sb out2
edge R G
edge G m
edge m g
edge m t
edge G hv
edge hv out0
)"));
  lc.push_back(wp(R"(inputs 0
outputs 3
node R X 00
node G Z 01
node sa Z 01
node sb Z 01
node hv H
edge R sa
edge sa out1
edge R sb
edge sb out2
edge R G
edge G hv
edge hv out0
)"));
  // colour change back: path graph with R(01) on v and G(01) on a and b
  lc.push_back(wp(R"(inputs 0
outputs 3
node v Z 00
node x X 01
node sa Z 01
node sb Z 01
node h1 H
node h2 H
edge v x
edge x out0
edge v h1
edge h1 sa
edge sa out1
edge v h2
edge h2 sb
edge sb out2
)"));
  // the engine's own rendering of local_comp(triangle, v)
  lc.push_back({render(local_comp(Gslo{AdjacencyMatrix::from_edges(3, {{0, 1}, {0, 2}, {1, 2}})}, 0)), true});
  out.push_back(make("local complementation of the triangle", std::move(lc)));

  return out;
}

std::optional<std::vector<RewriteStep>> derive(const DerivedCase& c) {
  std::vector<RewriteStep> steps;
  for (std::size_t i = 1; i < c.waypoints.size(); ++i) {
    SearchOptions o;
    o.max_depth = 4;
    o.max_nodes = 12;
    o.drop_scalars = c.waypoints[i].drop_scalars;
    auto leg = find_derivation(c.waypoints[i - 1].d, c.waypoints[i].d, o);
    if (!leg) return std::nullopt;
    steps.insert(steps.end(), leg->begin(), leg->end());
  }
  return steps;
}

}  // namespace toybit::testing
