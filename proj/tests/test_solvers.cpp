#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <ptf/solvers.hpp>

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

void check_sound( solve_result const& res, boolean_function const& f )
{
  REQUIRE( res.monomial_count == res.ptf.terms.size() );
  REQUIRE( verify_ptf( res.ptf, f ).ok );
}

} // namespace

TEST_CASE( "brute force density examples" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );
  auto const rx = brute_force_density( xor2 );
  CHECK( rx.exact );
  CHECK( rx.value == 1 );
  CHECK( rx.result.ptf.terms.size() == 1 );
  CHECK( rx.result.ptf.terms.count( 3 ) == 1 );

  auto const and2 = parse_bf( "[1,-1,-1,-1]" );
  auto const ra = brute_force_density( and2 );
  CHECK( ra.exact );
  CHECK( ra.value == 3 );
  check_sound( ra.result, and2 );

  for ( uint32_t n : { 1u, 2u, 3u } )
  {
    auto const ones = boolean_function( n, std::vector<int8_t>( size_t( 1 ) << n, 1 ) );
    auto const r = brute_force_density( ones );
    CHECK( r.exact );
    CHECK( r.value == 1 );
    CHECK( r.result.ptf.terms.count( 0 ) == 1 );
  }
}

TEST_CASE( "brute force budget and preconditions" )
{
  auto const and2 = parse_bf( "[1,-1,-1,-1]" );
  auto const capped = brute_force_density( and2, uint64_t( 2 ) );
  CHECK( !capped.exact );
  CHECK( capped.value >= 3 ); /* upper bound only */
  check_sound( capped.result, and2 );

  std::vector<int8_t> signs( 32, 1 );
  signs[0] = -1;
  auto const f5 = boolean_function( 5, std::move( signs ) );
  CHECK_THROWS_AS( brute_force_density( f5 ), std::invalid_argument );
  CHECK_NOTHROW( brute_force_density( f5, uint64_t( 10 ) ) );
}

TEST_CASE( "monomial_order" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );
  auto const ox = monomial_order( xor2 );
  CHECK( ox == std::vector<monomial_id>{ 0, 1, 2, 3 } );

  auto const ones = boolean_function( 3, std::vector<int8_t>( 8, 1 ) );
  auto const oc = monomial_order( ones );
  CHECK( oc == std::vector<monomial_id>{ 1, 2, 3, 4, 5, 6, 7, 0 } );

  /* all-distinct magnitudes: unique sort; descending flag reverses it */
  std::mt19937_64 rng( 31 );
  for ( int i = 0; i < 50; ++i )
  {
    auto const f = random_bf( 4, rng );
    auto const s = spectrum( f );
    auto const asc = monomial_order( f );
    for ( size_t a = 0; a + 1 < asc.size(); ++a )
    {
      auto const ka = boost::multiprecision::abs( s.coeffs[asc[a]] );
      auto const kb = boost::multiprecision::abs( s.coeffs[asc[a + 1]] );
      REQUIRE( ( ka < kb || ( ka == kb && asc[a] < asc[a + 1] ) ) );
    }
    auto const desc = monomial_order( f, { false, true } );
    for ( size_t a = 0; a + 1 < desc.size(); ++a )
    {
      auto const ka = boost::multiprecision::abs( s.coeffs[desc[a]] );
      auto const kb = boost::multiprecision::abs( s.coeffs[desc[a + 1]] );
      REQUIRE( ( ka > kb || ( ka == kb && desc[a] < desc[a + 1] ) ) );
    }
  }
}

TEST_CASE( "l_heuristic examples" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );
  auto const rx = l_heuristic( xor2 );
  CHECK( rx.monomial_count == 1 );
  check_sound( rx, xor2 );

  auto const ones = boolean_function( 3, std::vector<int8_t>( 8, 1 ) );
  auto const rc = l_heuristic( ones );
  CHECK( rc.monomial_count == 1 );
  CHECK( rc.ptf.terms.count( 0 ) == 1 );

  /* hard benchmark function: 9 monomials on a known support */
  auto const t2 = parse_bf( "[-1,-1,-1,-1,-1,-1,1,1,-1,1,-1,1,-1,1,1,-1]" );
  auto const rt = l_heuristic( t2 );
  CHECK( rt.monomial_count == 9 );
  for ( monomial_id j : { 3, 5, 7, 10, 11, 12, 13, 14, 15 } )
  {
    CHECK( rt.ptf.terms.count( j ) == 1 );
  }
  check_sound( rt, t2 );
}

TEST_CASE( "b_heuristic examples" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );
  auto const rx = b_heuristic( xor2 );
  CHECK( rx.monomial_count == 1 ); /* largest eliminable prefix is 3 */
  check_sound( rx, xor2 );

  auto const ones = boolean_function( 3, std::vector<int8_t>( 8, 1 ) );
  CHECK( b_heuristic( ones ).monomial_count == 1 );
}

TEST_CASE( "oracle call budgets" )
{
  std::mt19937_64 rng( 37 );
  for ( int i = 0; i < 40; ++i )
  {
    uint32_t const n = 2 + rng() % 3;
    auto const f = random_bf( n, rng );
    CHECK( l_heuristic( f ).stats.oracle_calls <= uint64_t( 1 ) << n );
    CHECK( b_heuristic( f ).stats.oracle_calls <= n + 1 );
  }
}

TEST_CASE( "three_quarters examples" )
{
  auto const xor2 = parse_bf( "[1,-1,-1,1]" );
  auto const rx = three_quarters( xor2 );
  CHECK( !rx.bound_missed );
  CHECK( rx.monomial_count <= 3 );
  check_sound( rx, xor2 );

  auto const t2 = parse_bf( "[-1,-1,-1,-1,-1,-1,1,1,-1,1,-1,1,-1,1,1,-1]" );
  auto const rt = three_quarters( t2 );
  CHECK( !rt.bound_missed );
  CHECK( rt.monomial_count == 12 );
  check_sound( rt, t2 );

  for ( uint32_t n : { 2u, 3u, 4u } )
  {
    auto const ones = boolean_function( n, std::vector<int8_t>( size_t( 1 ) << n, 1 ) );
    auto const r = three_quarters( ones );
    CHECK( !r.bound_missed );
    CHECK( r.monomial_count * 4 <= 3 * ones.size() );
  }

  std::vector<int8_t> two( 2, 1 );
  CHECK_THROWS_AS( three_quarters( boolean_function( 1, two ) ), std::invalid_argument );
}

TEST_CASE( "three_quarters bound holds exhaustively for n <= 3" )
{
  for ( uint32_t n = 2; n <= 3; ++n )
  {
    for ( uint64_t bits = 0; bits < ( uint64_t( 1 ) << ( 1u << n ) ); ++bits )
    {
      auto const f = boolean_function::from_bits( n, bits );
      auto const r = three_quarters( f );
      REQUIRE( !r.bound_missed );
      REQUIRE( 4 * r.monomial_count <= 3 * f.size() );
      REQUIRE( verify_ptf( r.ptf, f ).ok );
    }
  }
}

TEST_CASE( "soundness exhaustive n <= 3 (brute, l, b, 3q)" )
{
  for ( uint32_t n = 1; n <= 3; ++n )
  {
    for ( uint64_t bits = 0; bits < ( uint64_t( 1 ) << ( 1u << n ) ); ++bits )
    {
      auto const f = boolean_function::from_bits( n, bits );
      check_sound( brute_force_density( f ).result, f );
      check_sound( l_heuristic( f ), f );
      check_sound( b_heuristic( f ), f );
      if ( n >= 2 )
      {
        check_sound( three_quarters( f ), f );
      }
    }
  }
}

TEST_CASE( "oracle dominance: density lower-bounds every heuristic, n = 3" )
{
  for ( uint64_t bits = 0; bits < 256; ++bits )
  {
    auto const f = boolean_function::from_bits( 3, bits );
    auto const d = brute_force_density( f ).value;
    REQUIRE( d <= l_heuristic( f ).monomial_count );
    REQUIRE( d <= b_heuristic( f ).monomial_count );
    REQUIRE( d <= three_quarters( f ).monomial_count );
  }
}

TEST_CASE( "complement symmetry of solver counts, exhaustive n <= 3" )
{
  for ( uint32_t n = 2; n <= 3; ++n )
  {
    for ( uint64_t bits = 0; bits < ( uint64_t( 1 ) << ( 1u << n ) ); ++bits )
    {
      auto const f = boolean_function::from_bits( n, bits );
      auto const g = f.negated();
      REQUIRE( brute_force_density( f ).value == brute_force_density( g ).value );
      REQUIRE( l_heuristic( f ).monomial_count == l_heuristic( g ).monomial_count );
      REQUIRE( b_heuristic( f ).monomial_count == b_heuristic( g ).monomial_count );
      REQUIRE( three_quarters( f ).monomial_count == three_quarters( g ).monomial_count );
    }
  }
}

TEST_CASE( "ga determinism and soundness" )
{
  std::mt19937_64 rng( 41 );
  for ( int i = 0; i < 6; ++i )
  {
    auto const f = random_bf( 4, rng );
    ga_config cfg;
    cfg.seed = 1000 + i;
    cfg.generations = 30;
    auto const a = ga_solve( f, cfg );
    auto const b = ga_solve( f, cfg );
    CHECK( a.monomial_count == b.monomial_count );
    CHECK( a.ptf.terms == b.ptf.terms );
    CHECK( a.eliminated == b.eliminated );
    check_sound( a, f );
  }
}

TEST_CASE( "ga complement symmetry and fitness law, exhaustive n = 2" )
{
  ga_config cfg;
  cfg.generations = 20;
  cfg.seed = 7;
  for ( uint64_t bits = 0; bits < 16; ++bits )
  {
    auto const f = boolean_function::from_bits( 2, bits );
    auto const r = ga_solve( f, cfg );
    check_sound( r, f );
    /* fitness law: best fitness is the eliminated popcount */
    auto const eliminated = r.eliminated.count();
    CHECK( r.monomial_count + eliminated <= f.size() ); /* kept zeros allowed */
    auto const rc = ga_solve( f.negated(), cfg );
    CHECK( r.monomial_count == rc.monomial_count );
  }
}

TEST_CASE( "ga constant function and config validation" )
{
  auto const ones = boolean_function( 3, std::vector<int8_t>( 8, 1 ) );
  ga_config cfg;
  cfg.seed = 3;
  auto const r = ga_solve( ones, cfg );
  CHECK( r.monomial_count <= 8 );
  check_sound( r, ones );

  ga_config bad = cfg;
  bad.population = 1;
  CHECK_THROWS_AS( ga_solve( ones, bad ), std::invalid_argument );
  bad = cfg;
  bad.mutation_rate = 1.5;
  CHECK_THROWS_AS( ga_solve( ones, bad ), std::invalid_argument );
  bad = cfg;
  bad.elitism = bad.population;
  CHECK_THROWS_AS( ga_solve( ones, bad ), std::invalid_argument );
}

TEST_CASE( "solve results carry consistent elimination bookkeeping" )
{
  std::mt19937_64 rng( 43 );
  for ( int i = 0; i < 25; ++i )
  {
    auto const f = random_bf( 4, rng );
    for ( auto const& res : { l_heuristic( f ), b_heuristic( f ), three_quarters( f ) } )
    {
      size_t kept_zero = 0;
      for ( monomial_id j = 0; j < f.size(); ++j )
      {
        if ( !res.eliminated.test( j ) && !res.ptf.terms.count( j ) )
        {
          ++kept_zero;
        }
      }
      REQUIRE( res.monomial_count ==
               f.size() - res.eliminated.count() - kept_zero );
      for ( auto const j : res.eliminated.indices() )
      {
        REQUIRE( res.ptf.terms.count( j ) == 0 );
      }
    }
  }
}
