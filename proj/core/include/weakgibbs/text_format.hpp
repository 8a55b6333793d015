#pragma once

// Line-oriented text documents for systems, potentials, measures and maps.
// Each document starts with "<kind> 1" (format version). '#' starts a
// comment; blank lines are ignored. Reals are written with 17 significant
// digits, so write -> read reproduces every double bit for bit.
//
//   sft 1                 potential 1            measure 1
//   alphabet 2            depth 2                type markov | bernoulli | rpf | table
//   row 1 1               precision 17           bernoulli: p <p_1> ... <p_k>
//   row 1 0               <symbols...> <value>   markov:    q <row>  (k lines), optional pi <...>
//                                                rpf:       depth d, then <symbols...> <value>
//                                                table:     length n, then <symbols...> <mass>
//   map 1
//   type piecewise_linear | general
//   alphabet k
//   row ...               (coding, one line per symbol)
//   branch <domain left> <domain right> <image left> <image right> <+|->
//   family perturbed_doubling      (general only)
//   parameter <a>                  (general only)

#include <memory>
#include <string>

#include "weakgibbs/interval_map.hpp"
#include "weakgibbs/measure.hpp"
#include "weakgibbs/potential.hpp"
#include "weakgibbs/sft.hpp"

namespace weakgibbs {

/// %.17g: enough digits to round-trip any double.
std::string format_real(double x);

std::string write_system(const TransitionSystem& ts);
TransitionSystem read_system(const std::string& text);

std::string write_potential(const LocallyConstantPotential& phi);
LocallyConstantPotential read_potential(const TransitionSystem& ts, const std::string& text);

/// Markov measures are written as q rows plus pi (block length 1 only).
std::string write_measure(const MarkovMeasure& mu);
std::string write_measure(const TableMeasure& mu);
std::shared_ptr<const CylinderMeasureOracle> read_measure(const TransitionSystem& ts, const std::string& text);

std::string write_map(const ExpandingMarkovMap& map);
std::unique_ptr<ExpandingMarkovMap> read_map(const std::string& text);

}  // namespace weakgibbs
