/*!
  \file ptf.hpp
  \brief Sparse polynomial threshold functions: evaluation, sign
         verification, JSON serialization, and human-readable printing.
*/

#pragma once

#include "bf.hpp"
#include "rational.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ptf
{

/*! Strictly positive vector certifying that the eliminated monomials can be
    annihilated; also determines the surviving coefficients. */
struct witness_t
{
  std::vector<big_rat> k;
};

/*! \brief Sparse exact-rational polynomial over +-1 monomials.

  Stored coefficients are never zero.  When a certificate is present the
  polynomial evaluates to f_t * k_t at every assignment t, which makes sign
  correctness an exact consequence.
*/
struct ptf_t
{
  uint32_t num_vars{ 0 };
  std::map<monomial_id, big_rat> terms;
  std::optional<witness_t> certificate;
  std::string source;

  size_t monomial_count() const { return terms.size(); }
};

inline big_rat evaluate_ptf( ptf_t const& p, uint32_t t )
{
  big_rat acc = 0;
  for ( auto const& [j, a] : p.terms )
  {
    if ( hadamard_entry( p.num_vars, t, j ) > 0 )
    {
      acc += a;
    }
    else
    {
      acc -= a;
    }
  }
  return acc;
}

struct sign_violation
{
  uint32_t t;
  big_rat value;
  bool is_zero; /* zero value (sign undefined) vs wrong sign */
};

struct verify_report
{
  bool ok{ false };
  std::vector<sign_violation> violations;
};

/*! Checks sgn(p) = f at every assignment; lists every violating point. */
inline verify_report verify_ptf( ptf_t const& p, boolean_function const& f )
{
  if ( p.num_vars != f.num_vars() )
  {
    throw std::invalid_argument( "verify_ptf: variable counts differ" );
  }
  verify_report rep;
  for ( uint32_t t = 0; t < f.size(); ++t )
  {
    auto const v = evaluate_ptf( p, t );
    int const s = v > 0 ? 1 : v < 0 ? -1 : 0;
    if ( s == 0 )
    {
      rep.violations.push_back( { t, v, true } );
    }
    else if ( s != f.at( t ) )
    {
      rep.violations.push_back( { t, v, false } );
    }
  }
  rep.ok = rep.violations.empty();
  return rep;
}

/*! Monomial as "1" or "x3 · x1 · x0" (highest variable first). */
inline std::string format_monomial( monomial_id j )
{
  if ( j == 0 )
  {
    return "1";
  }
  std::string out;
  for ( int k = 31; k >= 0; --k )
  {
    if ( j & ( 1u << k ) )
    {
      if ( !out.empty() )
      {
        out += " · ";
      }
      out += "x" + std::to_string( k );
    }
  }
  return out;
}

inline std::string format_ptf( ptf_t const& p )
{
  if ( p.terms.empty() )
  {
    return "0";
  }
  std::string out;
  for ( auto const& [j, a] : p.terms )
  {
    bool const neg = a < 0;
    big_rat const mag = neg ? big_rat( -a ) : a;
    if ( out.empty() )
    {
      out += neg ? "-" : "";
    }
    else
    {
      out += neg ? " - " : " + ";
    }
    if ( mag != 1 || j == 0 )
    {
      out += format_rat( mag );
      if ( j != 0 )
      {
        out += " · ";
      }
    }
    if ( j != 0 )
    {
      out += format_monomial( j );
    }
  }
  return out;
}

inline nlohmann::ordered_json ptf_to_json( ptf_t const& p )
{
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for ( auto const& [j, a] : p.terms )
  {
    std::vector<uint32_t> vars;
    for ( uint32_t k = 0; k < p.num_vars; ++k )
    {
      if ( j & ( 1u << k ) )
      {
        vars.push_back( k );
      }
    }
    terms.push_back( { { "vars", vars }, { "coeff", format_rat( a ) } } );
  }
  return { { "n", p.num_vars }, { "terms", terms }, { "source", p.source } };
}

inline ptf_t ptf_from_json( nlohmann::json const& j )
{
  ptf_t p;
  p.num_vars = j.at( "n" ).get<uint32_t>();
  if ( p.num_vars < 1 || p.num_vars > max_supported_vars )
  {
    throw std::invalid_argument( "variable count out of range" );
  }
  p.source = j.value( "source", "" );
  for ( auto const& term : j.at( "terms" ) )
  {
    monomial_id id = 0;
    for ( auto const& v : term.at( "vars" ) )
    {
      auto const k = v.get<uint32_t>();
      if ( k >= p.num_vars )
      {
        throw std::invalid_argument( "variable index out of range" );
      }
      id |= 1u << k;
    }
    auto const coeff = parse_rat( term.at( "coeff" ).get<std::string>() );
    if ( coeff == 0 )
    {
      throw std::invalid_argument( "zero coefficient in PTF" );
    }
    if ( !p.terms.emplace( id, coeff ).second )
    {
      throw std::invalid_argument( "duplicate monomial in PTF" );
    }
  }
  return p;
}

} // namespace ptf
