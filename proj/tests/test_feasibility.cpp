#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <ptf/feasibility.hpp>

#include <random>

using namespace ptf;

namespace
{

boolean_function random_bf( uint32_t n, std::mt19937_64& rng )
{
  std::vector<int8_t> signs( size_t( 1 ) << n );
  for ( auto& v : signs )
  {
    v = rng() & 1 ? 1 : -1;
  }
  return boolean_function( n, std::move( signs ) );
}

elimination_set set_from_mask( uint32_t n, uint64_t mask )
{
  elimination_set e( n );
  for ( monomial_id j = 0; j < ( 1u << n ); ++j )
  {
    if ( ( mask >> j ) & 1 )
    {
      e.set( j );
    }
  }
  return e;
}

/* witness invariants checked directly against the definition */
void check_witness( boolean_function const& f, elimination_set const& e, witness_t const& w )
{
  REQUIRE( w.k.size() == f.size() );
  for ( auto const& v : w.k )
  {
    REQUIRE( v >= 1 );
  }
  for ( auto const j : e.indices() )
  {
    big_rat acc = 0;
    for ( uint32_t t = 0; t < f.size(); ++t )
    {
      auto const q = f.at( t ) * hadamard_entry( f.num_vars(), t, j );
      acc += q > 0 ? w.k[t] : big_rat( -w.k[t] );
    }
    REQUIRE( acc == 0 );
  }
}

} // namespace

TEST_CASE( "lp_feasible base cases" )
{
  CHECK( lp_feasible( lp_problem{} ).has_value() ); /* empty system */

  /* n=1, f = [+1,+1], eliminate the constant: row (+1,+1), no solution */
  auto const f1 = parse_bf( "11" );
  CHECK( !lp_feasible( build_lp( f1, set_from_mask( 1, 0b01 ) ) ) );

  /* row (+1,-1): k = (1,1) works */
  auto const xor1 = parse_bf( "10" ); /* f = [+1,-1] = x0 */
  auto const sol = lp_feasible( build_lp( xor1, set_from_mask( 1, 0b01 ) ) );
  REQUIRE( sol.has_value() );
}

TEST_CASE( "is_eliminable examples" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );

  auto const w_empty = is_eliminable( xor2, elimination_set( 2 ) );
  REQUIRE( w_empty );
  CHECK( w_empty->k == std::vector<big_rat>( 4, big_rat( 1 ) ) );

  /* E = {1, x0, x1}: k = all-ones certifies */
  auto const w = is_eliminable( xor2, set_from_mask( 2, 0b0111 ) );
  REQUIRE( w );
  check_witness( xor2, set_from_mask( 2, 0b0111 ), *w );

  CHECK_THROWS_AS( is_eliminable( xor2, elimination_set( 3 ) ), std::invalid_argument );
}

TEST_CASE( "full monomial set is never eliminable" )
{
  std::mt19937_64 rng( 5 );
  for ( uint32_t n = 1; n <= 3; ++n )
  {
    for ( int i = 0; i < 8; ++i )
    {
      auto const f = random_bf( n, rng );
      CHECK( !is_eliminable( f, set_from_mask( n, ( uint64_t( 1 ) << ( 1u << n ) ) - 1 ) ) );
    }
  }
}

TEST_CASE( "subset monotonicity, exhaustive n=2" )
{
  for ( uint64_t bits = 0; bits < 16; ++bits )
  {
    auto const f = boolean_function::from_bits( 2, bits );
    for ( uint64_t mask = 0; mask < 16; ++mask )
    {
      if ( !is_eliminable( f, set_from_mask( 2, mask ) ) )
      {
        continue;
      }
      for ( uint64_t sub = mask;; sub = ( sub - 1 ) & mask )
      {
        CHECK( is_eliminable( f, set_from_mask( 2, sub ) ).has_value() );
        if ( sub == 0 )
        {
          break;
        }
      }
    }
  }
}

TEST_CASE( "subset monotonicity and superset contrapositive, randomized n=3,4" )
{
  std::mt19937_64 rng( 11 );
  for ( int i = 0; i < 120; ++i )
  {
    uint32_t const n = 3 + ( i & 1 );
    uint64_t const universe = ( uint64_t( 1 ) << ( 1u << n ) ) - 1;
    auto const f = random_bf( n, rng );
    uint64_t const mask = rng() & universe;
    if ( is_eliminable( f, set_from_mask( n, mask ) ) )
    {
      uint64_t const sub = rng() & mask;
      CHECK( is_eliminable( f, set_from_mask( n, sub ) ).has_value() );
    }
    else
    {
      uint64_t const super = ( mask | rng() ) & universe;
      CHECK( !is_eliminable( f, set_from_mask( n, super ) ) );
    }
  }
}

TEST_CASE( "complement symmetry: same eliminability for f and -f" )
{
  std::mt19937_64 rng( 13 );
  for ( int i = 0; i < 100; ++i )
  {
    uint32_t const n = 2 + rng() % 3;
    auto const f = random_bf( n, rng );
    uint64_t const mask = rng() & ( ( uint64_t( 1 ) << ( 1u << n ) ) - 1 );
    auto const e = set_from_mask( n, mask );
    auto const a = is_eliminable( f, e );
    auto const b = is_eliminable( f.negated(), e );
    CHECK( a.has_value() == b.has_value() );
    if ( a && b )
    {
      /* the same witness certifies both sides */
      check_witness( f.negated(), e, *a );
    }
  }
}

TEST_CASE( "witness validity and positive rescaling" )
{
  std::mt19937_64 rng( 17 );
  int found = 0;
  for ( int i = 0; i < 200 && found < 60; ++i )
  {
    uint32_t const n = 2 + rng() % 3;
    auto const f = random_bf( n, rng );
    uint64_t const mask = rng() & rng() & ( ( uint64_t( 1 ) << ( 1u << n ) ) - 1 );
    auto const e = set_from_mask( n, mask );
    auto const w = is_eliminable( f, e );
    if ( !w )
    {
      continue;
    }
    ++found;
    check_witness( f, e, *w );

    witness_t scaled = *w;
    big_rat const factor( 3 + int( rng() % 5 ), 7 );
    for ( auto& v : scaled.k )
    {
      v *= factor;
    }
    for ( auto const j : e.indices() )
    {
      big_rat acc = 0;
      for ( uint32_t t = 0; t < f.size(); ++t )
      {
        auto const q = f.at( t ) * hadamard_entry( f.num_vars(), t, j );
        acc += q > 0 ? scaled.k[t] : big_rat( -scaled.k[t] );
      }
      CHECK( acc == 0 );
    }
  }
  CHECK( found >= 30 );
}

TEST_CASE( "determinism: identical inputs, identical witness" )
{
  std::mt19937_64 rng( 19 );
  for ( int i = 0; i < 40; ++i )
  {
    auto const f = random_bf( 4, rng );
    auto const e = set_from_mask( 4, rng() & 0xffff );
    auto const a = is_eliminable( f, e );
    auto const b = is_eliminable( f, e );
    REQUIRE( a.has_value() == b.has_value() );
    if ( a )
    {
      CHECK( a->k == b->k );
    }
  }
}

TEST_CASE( "ptf_from_witness examples" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );
  auto const e = set_from_mask( 2, 0b0111 );
  auto const w = is_eliminable( xor2, e );
  REQUIRE( w );
  auto const p = ptf_from_witness( xor2, e, *w );
  REQUIRE( p.terms.size() == 1 );
  CHECK( p.terms.at( 3 ) == 1 );

  /* E = empty, k = 1: coefficients are the spectrum (integer-rescaled) */
  auto const and2 = parse_bf( "[1,-1,-1,-1]" );
  witness_t ones{ std::vector<big_rat>( 4, big_rat( 1 ) ) };
  auto const q = ptf_from_witness( and2, elimination_set( 2 ), ones );
  REQUIRE( q.terms.size() == 4 );
  CHECK( q.terms.at( 0 ) == -1 );
  CHECK( q.terms.at( 1 ) == 1 );
  CHECK( q.terms.at( 2 ) == 1 );
  CHECK( q.terms.at( 3 ) == 1 );

  /* support equals the spectral support for any f with E = empty */
  std::mt19937_64 rng( 23 );
  for ( int i = 0; i < 30; ++i )
  {
    auto const f = random_bf( 4, rng );
    witness_t k1{ std::vector<big_rat>( 16, big_rat( 1 ) ) };
    auto const r = ptf_from_witness( f, elimination_set( 4 ), k1 );
    auto const s = spectrum( f );
    size_t support = 0;
    for ( monomial_id j = 0; j < 16; ++j )
    {
      if ( s.coeffs[j] != 0 )
      {
        ++support;
        REQUIRE( r.terms.count( j ) == 1 );
      }
    }
    CHECK( r.terms.size() == support );
  }
}

TEST_CASE( "ptf_from_witness rejects invalid witnesses" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );
  auto const e = set_from_mask( 2, 0b1000 ); /* x0x1 is not eliminable for XOR */
  witness_t ones{ std::vector<big_rat>( 4, big_rat( 1 ) ) };
  CHECK_THROWS_AS( ptf_from_witness( xor2, e, ones ), std::runtime_error );

  witness_t nonpos{ std::vector<big_rat>{ 1, 0, 1, 1 } };
  CHECK_THROWS_AS( ptf_from_witness( xor2, elimination_set( 2 ), nonpos ),
                   std::invalid_argument );
  witness_t short_k{ std::vector<big_rat>{ 1, 1 } };
  CHECK_THROWS_AS( ptf_from_witness( xor2, elimination_set( 2 ), short_k ),
                   std::invalid_argument );
}

TEST_CASE( "certificate identity: p(t) = f_t * k'_t with the stored certificate" )
{
  std::mt19937_64 rng( 29 );
  int built = 0;
  for ( int i = 0; i < 150 && built < 50; ++i )
  {
    uint32_t const n = 2 + rng() % 3;
    auto const f = random_bf( n, rng );
    uint64_t const mask = rng() & rng() & ( ( uint64_t( 1 ) << ( 1u << n ) ) - 1 );
    auto const e = set_from_mask( n, mask );
    auto const w = is_eliminable( f, e );
    if ( !w )
    {
      continue;
    }
    ++built;
    auto const p = ptf_from_witness( f, e, *w );
    REQUIRE( p.certificate );
    for ( uint32_t t = 0; t < f.size(); ++t )
    {
      big_rat const expected =
          f.at( t ) > 0 ? p.certificate->k[t] : big_rat( -p.certificate->k[t] );
      REQUIRE( evaluate_ptf( p, t ) == expected );
    }
    CHECK( verify_ptf( p, f ).ok );

    /* integer coefficients with gcd 1 */
    big_int g = 0;
    for ( auto const& [j, a] : p.terms )
    {
      REQUIRE( boost::multiprecision::denominator( a ) == 1 );
      g = boost::multiprecision::gcd( g, boost::multiprecision::abs( big_int( boost::multiprecision::numerator( a ) ) ) );
    }
    if ( !p.terms.empty() )
    {
      CHECK( g == 1 );
    }
  }
  CHECK( built >= 30 );
}
