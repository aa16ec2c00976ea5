static void showdirs(struct dnode **dn, int ndirs)
{
#ifdef BB_FEATURE_LS_SORTFILES
	int dndirs;
	struct dnode **dnd;
#endif
	struct dnode **subdnp;
	int nfiles;
	subdnp = list_dir(dn);
#ifdef CONFIG_FEATURE_LS_RECURSIVE
	dndirs = countdirs(subdnp, nfiles);
	if (dndirs > 0) {
		dnd = splitdnarray(subdnp, nfiles);
		showdirs(dnd, dndirs);
		free(dnd);
	}
	free(subdnp);
#endif
}
