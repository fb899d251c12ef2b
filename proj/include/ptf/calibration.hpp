/*!
  \file calibration.hpp
  \brief One-shot convention calibration.

  A known hard 4-variable function together with four independently published
  sign-representations of it.  The calibrate routine evaluates the reference
  polynomials under every (bit-order, polarity) assignment convention and
  reports which conventions make all of them verify; this pins down the
  variable-order convention the truth-vector notation implies.
*/

#pragma once

#include "bf.hpp"
#include "ptf.hpp"

#include <string>
#include <vector>

namespace ptf::calibration
{

inline boolean_function benchmark_function()
{
  return parse_bf( "[-1,-1,-1,-1,-1,-1,1,1,-1,1,-1,1,-1,1,1,-1]" );
}

/*! Four known integer sign-representations of the benchmark function. */
inline std::vector<ptf_t> reference_ptfs()
{
  auto make = []( std::string source, std::vector<std::pair<monomial_id, int>> terms ) {
    ptf_t p;
    p.num_vars = 4;
    p.source = std::move( source );
    for ( auto const& [j, c] : terms )
    {
      p.terms.emplace( j, big_rat( c ) );
    }
    return p;
  };
  return {
      make( "3q", { { 1, -2 }, { 3, -2 }, { 5, -2 }, { 7, 2 }, { 8, -3 }, { 9, 3 },
                    { 10, -3 }, { 11, 3 }, { 12, -3 }, { 13, 3 }, { 14, 3 }, { 15, -3 } } ),
      make( "l", { { 3, -1 }, { 5, -1 }, { 7, 1 }, { 10, -1 }, { 11, 1 }, { 12, -1 },
                   { 13, 1 }, { 14, 1 }, { 15, -1 } } ),
      make( "b", { { 3, -2 }, { 4, -1 }, { 5, -1 }, { 6, 2 }, { 8, -1 }, { 9, 2 },
                   { 10, -1 }, { 12, -2 }, { 13, 1 }, { 14, 1 } } ),
      make( "ga", { { 1, -2 }, { 2, -3 }, { 4, -2 }, { 5, -1 }, { 8, -2 }, { 10, -2 },
                    { 11, 1 }, { 12, -3 }, { 13, 2 }, { 15, -2 } } ),
  };
}

struct convention
{
  bool reversed_bits{ false };  /* x_k reads bit (n-1-k) of t instead of bit k */
  bool bit0_positive{ true };   /* bit value 0 -> x_k = +1 */
};

/*! Evaluates p at assignment index t under an explicit convention. */
inline big_rat evaluate_under_convention( ptf_t const& p, uint32_t t, convention c )
{
  big_rat acc = 0;
  for ( auto const& [j, a] : p.terms )
  {
    int sign = 1;
    for ( uint32_t k = 0; k < p.num_vars; ++k )
    {
      if ( !( j & ( 1u << k ) ) )
      {
        continue;
      }
      uint32_t const bit = ( t >> ( c.reversed_bits ? p.num_vars - 1 - k : k ) ) & 1;
      int const x = ( bit == 0 ) == c.bit0_positive ? 1 : -1;
      sign *= x;
    }
    acc += sign > 0 ? a : big_rat( -a );
  }
  return acc;
}

struct calibration_entry
{
  convention conv;
  bool all_verify{ false };
  std::vector<std::string> failing_sources;
};

/*! Tries all four conventions against the reference polynomials. */
inline std::vector<calibration_entry> calibrate()
{
  auto const f = benchmark_function();
  auto const refs = reference_ptfs();
  std::vector<calibration_entry> out;
  for ( bool rev : { false, true } )
  {
    for ( bool pos : { true, false } )
    {
      calibration_entry entry;
      entry.conv = { rev, pos };
      for ( auto const& p : refs )
      {
        bool ok = true;
        for ( uint32_t t = 0; t < f.size(); ++t )
        {
          auto const v = evaluate_under_convention( p, t, entry.conv );
          if ( v == 0 || ( v > 0 ? 1 : -1 ) != f.at( t ) )
          {
            ok = false;
            break;
          }
        }
        if ( !ok )
        {
          entry.failing_sources.push_back( p.source );
        }
      }
      entry.all_verify = entry.failing_sources.empty();
      out.push_back( std::move( entry ) );
    }
  }
  return out;
}

} // namespace ptf::calibration
