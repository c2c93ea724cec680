#include <algorithm>
#include <set>

#include "symdex/sets.hpp"

namespace symdex {

void AxisBox::set_range(Coord i, Interval r) {
  if (r == fallback) {
    ranges.erase(i);
  } else {
    ranges[i] = std::move(r);
  }
}

bool AxisBox::empty() const {
  // A finitely supported vector is zero at all but finitely many unlisted
  // coordinates, so the fallback range has to admit 0.
  if (fallback.lo > 0 || fallback.hi < 0) return true;
  for (const auto& [i, r] : ranges) {
    if (r.lo > r.hi) return true;
  }
  return false;
}

bool AxisBox::symmetric() const {
  if (fallback.lo != -fallback.hi) return false;
  for (const auto& [i, r] : ranges) {
    if (r.lo != -r.hi) return false;
  }
  return true;
}

Box AxisBox::to_box() const {
  Box out{fallback.hi, {}};
  for (const auto& [i, r] : ranges) {
    if (r.hi != fallback.hi) out.overrides[i] = r.hi;
  }
  return out;
}

AxisBox to_axis_box(const Box& box) {
  AxisBox out{{-box.default_radius, box.default_radius}, {}};
  for (const auto& [i, r] : box.overrides) out.set_range(i, {-r, r});
  return out;
}

namespace {

std::set<Coord> listed_coords(const AxisBox& b) {
  std::set<Coord> out;
  for (const auto& [i, r] : b.ranges) out.insert(i);
  return out;
}

}  // namespace

std::optional<AxisBox> as_axis_box(const SetExpr& set) {
  return std::visit(
      [&](const auto& node) -> std::optional<AxisBox> {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Box>) {
          return to_axis_box(node);
        } else if constexpr (std::is_same_v<T, Translate>) {
          auto base = as_axis_box(node.base);
          if (!base) return std::nullopt;
          AxisBox out{base->fallback, {}};
          std::set<Coord> coords = listed_coords(*base);
          for (const auto& [i, v] : node.by.entries()) coords.insert(i);
          for (Coord i : coords) {
            const Interval& r = base->range(i);
            const Scalar t = node.by[i];
            out.set_range(i, {r.lo + t, r.hi + t});
          }
          return out;
        } else if constexpr (std::is_same_v<T, Negate>) {
          auto base = as_axis_box(node.base);
          if (!base) return std::nullopt;
          AxisBox out{{-base->fallback.hi, -base->fallback.lo}, {}};
          for (const auto& [i, r] : base->ranges) out.set_range(i, {-r.hi, -r.lo});
          return out;
        } else if constexpr (std::is_same_v<T, Intersect>) {
          std::vector<AxisBox> parts;
          for (const auto& p : node.parts) {
            auto b = as_axis_box(p);
            if (!b) return std::nullopt;
            parts.push_back(std::move(*b));
          }
          if (parts.empty()) return std::nullopt;
          AxisBox out = parts.front();
          for (std::size_t k = 1; k < parts.size(); ++k) {
            const AxisBox& b = parts[k];
            std::set<Coord> coords = listed_coords(out);
            for (const auto& [i, r] : b.ranges) coords.insert(i);
            AxisBox next{{max_of(out.fallback.lo, b.fallback.lo), min_of(out.fallback.hi, b.fallback.hi)}, {}};
            for (Coord i : coords) {
              const Interval& x = out.range(i);
              const Interval& y = b.range(i);
              next.set_range(i, {max_of(x.lo, y.lo), min_of(x.hi, y.hi)});
            }
            out = std::move(next);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Symmetrized>) {
          auto base = as_axis_box(node.base);
          if (!base || node.witnesses.empty()) return std::nullopt;
          // |d_i| <= min over witnesses of min(hi_i - x_i, x_i - lo_i).
          auto radius = [&](Coord i, const Interval& r) {
            std::optional<Scalar> best;
            for (const auto& x : node.witnesses) {
              const Scalar xi = x[i];
              Scalar rho = min_of(r.hi - xi, xi - r.lo);
              if (!best || rho < *best) best = rho;
            }
            return *best;
          };
          const Scalar fallback_radius = min_of(base->fallback.hi, -base->fallback.lo);
          AxisBox out{{-fallback_radius, fallback_radius}, {}};
          std::set<Coord> coords = listed_coords(*base);
          for (const auto& x : node.witnesses) {
            for (const auto& [i, v] : x.entries()) coords.insert(i);
          }
          for (Coord i : coords) {
            const Scalar rho = radius(i, base->range(i));
            out.set_range(i, {-rho, rho});
          }
          return out;
        } else {
          return std::nullopt;
        }
      },
      set.node());
}

}  // namespace symdex
