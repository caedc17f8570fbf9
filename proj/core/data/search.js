// Client-side filtering of the entity list against search-index.json.
(function () {
  var input = document.getElementById("search-box");
  var list = document.getElementById("entity-list");
  var counter = document.getElementById("search-count");
  if (!input || !list) return;

  var items = Array.prototype.slice.call(list.getElementsByTagName("li"));
  var index = items.map(function (li) {
    return {
      el: li,
      text: (li.getAttribute("data-search") || li.textContent).toLowerCase()
    };
  });

  function refresh() {
    var needle = input.value.trim().toLowerCase();
    var shown = 0;
    index.forEach(function (entry) {
      var hit = needle === "" || entry.text.indexOf(needle) !== -1;
      entry.el.style.display = hit ? "" : "none";
      if (hit) shown++;
    });
    if (counter) counter.textContent = shown + " / " + index.length;
  }

  // keep the list in sync with the generated index file when available
  fetch("search-index.json")
    .then(function (r) { return r.ok ? r.json() : null; })
    .then(function (data) {
      if (!data) return;
      index.forEach(function (entry, i) {
        if (data[i] && data[i].label) {
          entry.text = (data[i].label + " " + data[i].slug + " " +
            (data[i].classes || []).join(" ")).toLowerCase();
        }
      });
      refresh();
    })
    .catch(function () { /* offline viewing without fetch is fine */ });

  input.addEventListener("input", refresh);
  refresh();
})();
