/*!
  \file feasibility.hpp
  \brief The eliminability oracle: decide whether a set of monomial columns
         of Q_f = diag(f)·D can be annihilated by a strictly positive vector,
         and build the resulting polynomial from the witness.

  Strict positivity k > 0 is normalized to k >= 1 (scale invariance).  The
  decision is an exact rational phase-1 simplex with Bland's pivot rule; the
  hot path runs over checked 64-bit rationals and falls back to arbitrary
  precision on overflow.
*/

#pragma once

#include "bf.hpp"
#include "ptf.hpp"
#include "rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ptf
{

/*! \brief Set of monomials slated for elimination, as a bitset over the 2^n
    monomial indices. */
class elimination_set
{
public:
  explicit elimination_set( uint32_t num_vars )
      : num_vars_( num_vars ), bits_( size_t( 1 ) << num_vars, false )
  {
  }

  static elimination_set from_indices( uint32_t num_vars, std::vector<monomial_id> const& ids )
  {
    elimination_set e( num_vars );
    for ( auto j : ids )
    {
      e.set( j );
    }
    return e;
  }

  uint32_t num_vars() const { return num_vars_; }
  size_t universe_size() const { return bits_.size(); }

  bool test( monomial_id j ) const { return bits_.at( j ); }
  void set( monomial_id j, bool value = true ) { bits_.at( j ) = value; }

  size_t count() const
  {
    size_t c = 0;
    for ( bool const b : bits_ )
    {
      c += b;
    }
    return c;
  }

  std::vector<monomial_id> indices() const
  {
    std::vector<monomial_id> out;
    for ( monomial_id j = 0; j < bits_.size(); ++j )
    {
      if ( bits_[j] )
      {
        out.push_back( j );
      }
    }
    return out;
  }

  friend bool operator==( elimination_set const& a, elimination_set const& b )
  {
    return a.num_vars_ == b.num_vars_ && a.bits_ == b.bits_;
  }

private:
  uint32_t num_vars_;
  std::vector<bool> bits_;
};

namespace detail
{

/*! \brief Phase-1 simplex for { A u = b, u >= 0 } with integer A, b.

  Minimizes the sum of artificial variables under Bland's anti-cycling rule
  (lowest-index entering column, lowest-basis-index ratio tie-break); an
  artificial that leaves the basis never re-enters.  Deterministic.

  Returns the basic solution u on feasibility, nothing on infeasibility.
*/
template<typename R>
std::optional<std::vector<R>> phase1_simplex( std::vector<std::vector<int8_t>> const& a,
                                              std::vector<int64_t> b )
{
  size_t const m = a.size();
  if ( m == 0 )
  {
    return std::vector<R>{};
  }
  size_t const n = a[0].size();
  size_t const cols = n + m + 1; /* structural + artificial + rhs */
  size_t const rhs = cols - 1;

  std::vector<std::vector<R>> tab( m, std::vector<R>( cols, R( 0 ) ) );
  std::vector<size_t> basis( m );
  for ( size_t i = 0; i < m; ++i )
  {
    int const flip = b[i] < 0 ? -1 : 1;
    for ( size_t j = 0; j < n; ++j )
    {
      tab[i][j] = R( flip * a[i][j] );
    }
    tab[i][n + i] = R( 1 );
    tab[i][rhs] = R( flip * b[i] );
    basis[i] = n + i;
  }

  /* reduced-cost row for min sum(artificials): d_j = c_j - sum_i tab[i][j] */
  std::vector<R> d( cols, R( 0 ) );
  for ( size_t j = 0; j < cols; ++j )
  {
    R s( 0 );
    for ( size_t i = 0; i < m; ++i )
    {
      s += tab[i][j];
    }
    d[j] = ( j >= n && j < n + m ? R( 1 ) : R( 0 ) ) - s;
  }
  R objective = -d[rhs]; /* sum of artificial values */

  while ( true )
  {
    /* Bland: lowest-index structural column with negative reduced cost */
    size_t enter = cols;
    for ( size_t j = 0; j < n; ++j )
    {
      if ( d[j].sign() < 0 )
      {
        enter = j;
        break;
      }
    }
    if ( enter == cols )
    {
      break;
    }

    size_t leave = m;
    R best_ratio( 0 );
    for ( size_t i = 0; i < m; ++i )
    {
      if ( tab[i][enter].sign() <= 0 )
      {
        continue;
      }
      R const ratio = tab[i][rhs] / tab[i][enter];
      if ( leave == m || ratio < best_ratio ||
           ( ratio == best_ratio && basis[i] < basis[leave] ) )
      {
        leave = i;
        best_ratio = ratio;
      }
    }
    if ( leave == m )
    {
      /* phase-1 objective is bounded below by 0; unbounded means a bug */
      throw std::logic_error( "phase-1 simplex: unbounded direction" );
    }

    R const piv = tab[leave][enter];
    for ( size_t j = 0; j < cols; ++j )
    {
      if ( !tab[leave][j].is_zero() )
      {
        tab[leave][j] /= piv;
      }
    }
    for ( size_t i = 0; i < m; ++i )
    {
      if ( i == leave || tab[i][enter].is_zero() )
      {
        continue;
      }
      R const factor = tab[i][enter];
      for ( size_t j = 0; j < cols; ++j )
      {
        if ( !tab[leave][j].is_zero() )
        {
          tab[i][j] -= factor * tab[leave][j];
        }
      }
    }
    if ( !d[enter].is_zero() )
    {
      R const factor = d[enter];
      for ( size_t j = 0; j < cols; ++j )
      {
        if ( !tab[leave][j].is_zero() )
        {
          d[j] -= factor * tab[leave][j];
        }
      }
    }
    basis[leave] = enter;
    objective = -d[rhs];
  }

  if ( objective.sign() != 0 )
  {
    return std::nullopt;
  }
  std::vector<R> u( n, R( 0 ) );
  for ( size_t i = 0; i < m; ++i )
  {
    if ( basis[i] < n )
    {
      u[basis[i]] = tab[i][rhs];
    }
  }
  return u;
}

} // namespace detail

/*! \brief Equality system { Q_E^T k = 0, k >= 1 } in substituted form
    { A u = b, u >= 0 } with k = 1 + u. */
struct lp_problem
{
  std::vector<std::vector<int8_t>> rows; /* one per eliminated monomial, +-1 entries */
  std::vector<int64_t> rhs;              /* -sum of the row */
};

inline lp_problem build_lp( boolean_function const& f, elimination_set const& e )
{
  lp_problem prob;
  size_t const len = f.size();
  for ( monomial_id j = 0; j < len; ++j )
  {
    if ( !e.test( j ) )
    {
      continue;
    }
    std::vector<int8_t> row( len );
    int64_t sum = 0;
    for ( uint32_t t = 0; t < len; ++t )
    {
      row[t] = int8_t( f.at( t ) * hadamard_entry( f.num_vars(), t, j ) );
      sum += row[t];
    }
    prob.rows.push_back( std::move( row ) );
    prob.rhs.push_back( -sum );
  }
  return prob;
}

/*! Exact feasibility of { A u = b, u >= 0 }; nothing means infeasible. */
inline std::optional<std::vector<big_rat>> lp_feasible( lp_problem const& prob )
{
  /* a row whose entries all share one sign cannot sum to zero against k >= 1 */
  for ( size_t i = 0; i < prob.rows.size(); ++i )
  {
    bool has_pos = false, has_neg = false;
    for ( auto const v : prob.rows[i] )
    {
      ( v > 0 ? has_pos : has_neg ) = true;
    }
    if ( !( has_pos && has_neg ) )
    {
      return std::nullopt;
    }
  }
  try
  {
    auto const u = detail::phase1_simplex<rat64>( prob.rows, prob.rhs );
    if ( !u )
    {
      return std::nullopt;
    }
    std::vector<big_rat> out;
    out.reserve( u->size() );
    for ( auto const& v : *u )
    {
      out.push_back( v.to_big() );
    }
    return out;
  }
  catch ( rat64_overflow const& )
  {
    auto const u = detail::phase1_simplex<big_rat>( prob.rows, prob.rhs );
    if ( !u )
    {
      return std::nullopt;
    }
    return *u;
  }
}

/*! \brief Decides eliminability of the monomials in `e` and returns the
    certifying k >= 1 when they can be annihilated.

  Deterministic: identical inputs always yield the identical witness.
*/
inline std::optional<witness_t> is_eliminable( boolean_function const& f, elimination_set const& e )
{
  if ( e.num_vars() != f.num_vars() )
  {
    throw std::invalid_argument( "is_eliminable: variable counts differ" );
  }
  auto const u = lp_feasible( build_lp( f, e ) );
  if ( !u )
  {
    return std::nullopt;
  }
  witness_t w;
  w.k.assign( f.size(), big_rat( 1 ) );
  if ( !u->empty() )
  {
    for ( size_t t = 0; t < f.size(); ++t )
    {
      w.k[t] += ( *u )[t];
    }
  }
  return w;
}

/*! \brief Builds the polynomial a = 2^-n · D · diag(f) · k and drops the
    eliminated (exactly zero) coefficients.

  Coefficients and the stored certificate are rescaled by the same positive
  integer so the coefficients are integers with gcd 1; the key identity
  evaluate_ptf(p, t) = f_t · k'_t then holds with the stored k'.
  Throws if k fails the witness equations for (f, e).
*/
inline ptf_t ptf_from_witness( boolean_function const& f, elimination_set const& e,
                               witness_t const& k, std::string source = "" )
{
  size_t const len = f.size();
  if ( k.k.size() != len )
  {
    throw std::invalid_argument( "witness length mismatch" );
  }
  for ( auto const& v : k.k )
  {
    if ( v <= 0 )
    {
      throw std::invalid_argument( "witness must be strictly positive" );
    }
  }

  /* butterfly over exact rationals: a = 2^-n * D * (f .* k) */
  std::vector<big_rat> a( len );
  for ( uint32_t t = 0; t < len; ++t )
  {
    a[t] = f.at( t ) > 0 ? k.k[t] : big_rat( -k.k[t] );
  }
  for ( size_t h = 1; h < len; h <<= 1 )
  {
    for ( size_t i = 0; i < len; i += h << 1 )
    {
      for ( size_t t = i; t < i + h; ++t )
      {
        auto const x = a[t];
        auto const y = a[t + h];
        a[t] = x + y;
        a[t + h] = x - y;
      }
    }
  }
  auto const two_n = big_int( 1 ) << f.num_vars();
  for ( auto& v : a )
  {
    v /= two_n;
  }

  for ( monomial_id j = 0; j < len; ++j )
  {
    if ( e.test( j ) && a[j] != 0 )
    {
      throw std::runtime_error( "ptf_from_witness: witness does not annihilate monomial " +
                                std::to_string( j ) );
    }
  }

  /* rescale to integer coefficients with gcd 1 */
  big_int lcm_den = 1;
  for ( auto const& v : a )
  {
    if ( v != 0 )
    {
      lcm_den = boost::multiprecision::lcm( lcm_den, big_int( boost::multiprecision::denominator( v ) ) );
    }
  }
  big_int g = 0;
  for ( auto const& v : a )
  {
    if ( v != 0 )
    {
      g = boost::multiprecision::gcd(
          g, boost::multiprecision::abs( big_int( boost::multiprecision::numerator( big_rat( v * lcm_den ) ) ) ) );
    }
  }
  big_rat const scale = g == 0 ? big_rat( 1 ) : big_rat( lcm_den, g );

  ptf_t p;
  p.num_vars = f.num_vars();
  p.source = std::move( source );
  for ( monomial_id j = 0; j < len; ++j )
  {
    if ( a[j] != 0 )
    {
      p.terms.emplace( j, a[j] * scale );
    }
  }
  witness_t scaled = k;
  for ( auto& v : scaled.k )
  {
    v *= scale;
  }
  p.certificate = std::move( scaled );
  return p;
}

} // namespace ptf
